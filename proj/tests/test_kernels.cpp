#include <doctest.h>

#include "fixtures.hpp"
#include "umw/corpus.hpp"
#include "umw/functors.hpp"
#include "umw/sym_filter.hpp"

using namespace umw;

TEST_CASE("unranking inverts the lexicographic enumeration") {
  for (int n : {1, 2, 3, 4, 5}) {
    Perm p = identity_perm(n);
    unsigned long long rank = 0;
    do {
      CHECK(unrank_perm(n, rank) == p);
      ++rank;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(rank == factorial(n));
  }
}

TEST_CASE("parallel filter equals the serial reference") {
  auto parity = [](const Perm& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inv;
    return inv % 2 == 0;
  };
  for (int n : {0, 1, 4, 7, 8}) {
    auto serial = filter_sym_serial(n, parity);
    auto parallel = filter_sym_parallel(n, parity);
    CHECK(serial == parallel);
    CHECK(serial.size() == (n <= 1 ? 1u : factorial(n) / 2));
    CHECK(std::is_sorted(serial.begin(), serial.end()));
  }
}

TEST_CASE("parallel filter on a real isometry predicate") {
  UltraSpace prod = comb_product(fixtures::u1(), rigid_comb(1, default_radii(1, Rat(1))));
  auto pred = [&](const Perm& p) {
    for (int x = 0; x < prod.size(); ++x)
      for (int y = x + 1; y < prod.size(); ++y)
        if (prod.d(x, y) != prod.d(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)]))
          return false;
    return true;
  };
  auto serial = filter_sym_serial(prod.size(), pred);
  auto parallel = filter_sym_parallel(prod.size(), pred);
  CHECK(serial == parallel);
  CHECK(serial.size() == 128);
}
