#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/perm.hpp"

using namespace umw;

namespace {

GroundSet abc() { return GroundSet({"a", "b", "c"}); }

Perm transposition(int n, int i, int j) {
  Perm p = identity_perm(n);
  std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]);
  return p;
}

}  // namespace

TEST_CASE("closure of nothing is the trivial group") {
  PermGroup g = closure(GroundSet(std::vector<std::string>{}), {}, 10);
  CHECK(g.order() == 1);
  PermGroup h = closure(abc(), {}, 10);
  CHECK(h.order() == 1);
}

TEST_CASE("closure of an involution has order 2") {
  PermGroup g = closure(GroundSet({"a", "b"}), {transposition(2, 0, 1)}, 10);
  CHECK(g.order() == 2);
}

TEST_CASE("transposition and 3-cycle generate all six permutations") {
  Perm cyc{1, 2, 0};
  PermGroup g = closure(abc(), {transposition(3, 0, 1), cyc}, 10);
  // oracle: every permutation of three points
  CHECK(g.order() == 6);
  auto all = oracles::enumerate_filter(3, [](const Perm&) { return true; });
  CHECK(g.elements == all);
}

TEST_CASE("closure guards and preconditions") {
  Perm cyc{1, 2, 0};
  CHECK_THROWS_AS(closure(abc(), {transposition(3, 0, 1), cyc}, 5), Error);
  CHECK_THROWS_AS(closure(abc(), {transposition(2, 0, 1)}, 10), Error);  // degree mismatch
}

TEST_CASE("orbits partition the ground set in least-element order") {
  PermGroup trivial = closure(GroundSet({"a", "b"}), {}, 10);
  CHECK(orbits(trivial) == std::vector<std::vector<int>>{{0}, {1}});

  PermGroup g = closure(abc(), {transposition(3, 0, 1)}, 10);
  CHECK(orbits(g) == std::vector<std::vector<int>>{{0, 1}, {2}});

  for (const auto& block : orbits(g)) {
    for (const Perm& p : g.elements)
      for (int x : block)
        CHECK(std::find(block.begin(), block.end(), p[static_cast<size_t>(x)]) != block.end());
  }
}

TEST_CASE("transitivity on blocks") {
  PermGroup trivial = closure(abc(), {}, 10);
  CHECK(is_transitive(trivial, {0}));
  CHECK_FALSE(is_transitive(trivial, {0, 1}));

  PermGroup s4 = symmetric_group(GroundSet({"a", "b", "c", "d"}), 100);
  CHECK(s4.order() == 24);
  CHECK(is_transitive(s4));

  PermGroup g = closure(abc(), {transposition(3, 0, 1)}, 10);
  CHECK_THROWS_AS(is_transitive(g, {0, 2}), Error);  // not invariant
}

TEST_CASE("stabilizers") {
  PermGroup trivial = closure(abc(), {}, 10);
  CHECK(stabilizer(trivial, 0).order() == 1);

  PermGroup s3 = symmetric_group(abc(), 10);
  CHECK(stabilizer(s3, "a").order() == 2);
  CHECK_THROWS_AS(stabilizer(s3, "z"), Error);

  PermGroup iso = iso_group(fixtures::u1());
  PermGroup stab = stabilizer(iso, "a");
  CHECK(stab.order() == 2);  // only the far pair may swap
}

TEST_CASE("conjugation witnesses") {
  PermGroup trivial = closure(GroundSet({"a"}), {}, 10);
  IsoWitness w = verify_conjugation(trivial, trivial, {0});
  CHECK(w.verified);

  PermGroup g = closure(GroundSet({"a", "b"}), {transposition(2, 0, 1)}, 10);
  PermGroup h = closure(GroundSet({"x", "y"}), {transposition(2, 0, 1)}, 10);
  IsoWitness relabel = verify_conjugation(g, h, {0, 1});
  CHECK(relabel.verified);

  // symmetric: the inverse bijection verifies the reverse direction
  IsoWitness back = verify_conjugation(h, g, {0, 1});
  CHECK(back.verified == relabel.verified);

  PermGroup trivial2 = closure(GroundSet({"x", "y"}), {}, 10);
  IsoWitness bad = verify_conjugation(g, trivial2, {0, 1});
  CHECK_FALSE(bad.verified);
  CHECK(bad.failure.find("orders differ") != std::string::npos);
}

TEST_CASE("closure output satisfies the group axioms on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    int n = rng.uniform(2, 5);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<Perm> gens;
    for (int g = 0, count = rng.uniform(1, 2); g < count; ++g)
      gens.push_back(transposition(n, rng.uniform(0, n - 1), rng.uniform(0, n - 1)));
    PermGroup grp = closure(GroundSet(names), gens, 10000);

    CHECK(grp.contains(identity_perm(n)));
    for (const Perm& p : grp.elements) {
      CHECK(grp.contains(inverse(p)));
      for (const Perm& q : grp.elements) CHECK(grp.contains(compose(p, q)));
    }
    // identity conjugation always verifies
    std::vector<int> ident(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ident[static_cast<size_t>(i)] = i;
    CHECK(verify_conjugation(grp, grp, ident).verified);
  }
}
