#include <doctest.h>

#include "umw/error.hpp"
#include "umw/rational.hpp"

using umw::Rat;

TEST_CASE("rationals normalize to lowest terms") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(0, 5) == Rat(0));
  CHECK(Rat(6, 3).str() == "2");
  CHECK(Rat(1, 3).str() == "1/3");
}

TEST_CASE("parsing accepts integers and fractions") {
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-3/6") == Rat(-1, 2));
  CHECK_THROWS_AS(Rat::parse("x"), umw::Error);
  CHECK_THROWS_AS(Rat::parse("1/0"), umw::Error);
  CHECK_THROWS_AS(Rat::parse("1/2/3"), umw::Error);
  CHECK_THROWS_AS(Rat::parse(""), umw::Error);
}

TEST_CASE("arithmetic and order are exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(1, 3));
  CHECK(Rat(1000000, 3) > Rat(333333));
}
