#include <doctest.h>

#include "fixtures.hpp"
#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/wreath.hpp"

using namespace umw;

namespace {

// Encoded reverse-omega chain d0 > d1 > d2 > ...; supports are either a
// finite prefix-set or cofinite tails. Used only to exercise the support
// predicates on genuinely infinite data.
class OmegaStarSupport : public SupportUniverse {
 public:
  // tail=true means the support is {d_n : n >= from} (infinite downward)
  OmegaStarSupport(bool tail, int from) : tail_(tail), from_(from) {}

  bool set_is_finite() const override { return !tail_; }

  bool upcone_intersections_all_finite() const override {
    // the up-cone of d_n is {d_0..d_n}, always finite, so any intersection is
    return true;
  }

  bool has_infinite_ascending_chain() const override {
    // ascending means toward d_0; above any element there are finitely many
    return false;
  }

  bool has_infinite_descending_chain_with_lower_bound() const override {
    // descending chains in a tail are infinite but the chain has no lower
    // bound in the order
    return false;
  }

 private:
  bool tail_;
  int from_;
};

}  // namespace

TEST_CASE("support flags on finite posets are all true") {
  Skeleton sk = fixtures::cherry_skeleton(2, 2, 1);
  SupportFlags none = support_kind(sk.delta, {});
  CHECK(none.fin);
  CHECK(none.lf);
  CHECK(none.wsp);
  CHECK(none.max);
  SupportFlags all = support_kind(sk.delta, {0, 1, 2});
  CHECK((all.fin && all.lf && all.wsp && all.max));
}

TEST_CASE("support flags distinguish the symbolic infinite chain") {
  SupportFlags tail = evaluate_supports(OmegaStarSupport(true, 0));
  CHECK_FALSE(tail.fin);  // locally finite but not finite
  CHECK(tail.lf);
  CHECK(tail.wsp);
  CHECK(tail.max);
  SupportFlags prefix = evaluate_supports(OmegaStarSupport(false, 0));
  CHECK(prefix.fin);
}

TEST_CASE("domains from supports collapse on finite skeletons") {
  Skeleton sk = fixtures::chain_skeleton({2, 2, 1});
  GlobalDomain lf = domain_from_supports(sk, SupportTag::LF);
  CHECK(lf.elems.size() == 4);
  for (SupportTag tag : {SupportTag::Fin, SupportTag::Wsp, SupportTag::Max})
    CHECK(domain_from_supports(sk, tag).elems == lf.elems);

  LocalFamily locals = locals_from_global(lf);
  CHECK(locals.parts[0].size() == 4);
  CHECK(locals.parts[1].size() == 2);
  CHECK(locals.parts[2].size() == 1);
  CHECK(validate_local_family(locals).ok());
  CHECK(global_from_full(locals).elems == lf.elems);
  CHECK(is_full(locals));
}

TEST_CASE("a diamond family can fail fullness") {
  // two incomparable tops a, b over two incomparable bottoms c, d; the c-side
  // couples the tops equal, the d-side couples them unequal
  Skeleton sk;
  sk.delta = make_poset(GroundSet({"a", "b", "c", "d"}), {{2, 0}, {2, 1}, {3, 0}, {3, 1}});
  sk.N = {2, 2, 2, 2};
  LocalFamily f;
  f.sk = sk;
  f.parts.resize(4);
  for (int top : {0, 1})
    for (int v = 0; v < 2; ++v) f.parts[static_cast<size_t>(top)].push_back(Seq{top, {v}});
  // up_set(c) = {a, b, c} in index order
  for (int j = 0; j < 2; ++j) {
    f.parts[2].push_back(Seq{2, {0, 0, j}});
    f.parts[2].push_back(Seq{2, {1, 1, j}});
    f.parts[3].push_back(Seq{3, {0, 1, j}});
    f.parts[3].push_back(Seq{3, {1, 0, j}});
  }
  for (auto& part : f.parts) std::sort(part.begin(), part.end());
  CHECK(validate_local_family(f).ok());
  CHECK_FALSE(is_full(f));
  CHECK_THROWS_AS(global_from_full(f), Error);
}

TEST_CASE("projection system validation pins the offending tuple") {
  ProjectionSystem w3 = fixtures::w3_twist();
  CHECK(validate_projection_system(w3).ok());

  // break compositionality on a 3-chain: twist only the long-range table
  ProjectionSystem bad = trivial_system(full_local_family(fixtures::chain_skeleton({2, 1, 2})));
  std::vector<int>& table = bad.pi[{0, 2}];
  std::swap(table[0], table[1]);
  ValidationReport rep = validate_projection_system(bad);
  CHECK_FALSE(rep.ok());
  bool names_tuple = false;
  for (const std::string& v : rep.violations)
    if (v.find("composition fails") != std::string::npos && v.find("d1") != std::string::npos &&
        v.find("d3") != std::string::npos)
      names_tuple = true;
  CHECK(names_tuple);
}

TEST_CASE("wreath groups of the standard shapes") {
  // two-level chain with two branches per node: the classical wreath product
  CHECK(wreath_group(bundle_from_supports(fixtures::chain_skeleton({2, 2}), SupportTag::LF))
            .order() == 8);
  // antichain: direct product
  CHECK(wreath_group(bundle_from_supports(fixtures::antichain_skeleton({2, 2}), SupportTag::LF))
            .order() == 4);
  // twisted system
  CHECK(wreath_group_full(fixtures::w3_twist()).order() == 2);
  // trivial
  CHECK(wreath_group_full(fixtures::trivial_system_fixture()).order() == 1);
}

TEST_CASE("search equals the exhaustive oracle on every small bundle") {
  std::vector<ProjectionSystem> bundles;
  bundles.push_back(fixtures::trivial_system_fixture());
  bundles.push_back(trivial_system(full_local_family(fixtures::chain_skeleton({2}))));
  bundles.push_back(trivial_system(full_local_family(fixtures::chain_skeleton({3}))));
  bundles.push_back(fixtures::chain22_system());
  bundles.push_back(fixtures::w3_twist());
  bundles.push_back(trivial_system(full_local_family(fixtures::chain_skeleton({2, 2, 1}))));
  bundles.push_back(trivial_system(full_local_family(fixtures::chain_skeleton({2, 1, 2}))));
  bundles.push_back(trivial_system(full_local_family(fixtures::antichain_skeleton({2, 2}))));
  bundles.push_back(trivial_system(full_local_family(fixtures::antichain_skeleton({2, 2, 2}))));
  bundles.push_back(trivial_system(full_local_family(fixtures::cherry_skeleton(2, 2, 1))));
  bundles.push_back(trivial_system(full_local_family(fixtures::cherry_skeleton(2, 1, 2))));
  {
    // twisted two-level chain: flip the top block under projection
    ProjectionSystem twisted = fixtures::chain22_system();
    for (int& v : twisted.pi[{0, 1}]) v = 1 - v;
    bundles.push_back(twisted);
  }
  {
    // twisted cherry
    ProjectionSystem twisted = trivial_system(full_local_family(fixtures::cherry_skeleton(2, 1, 2)));
    for (int& v : twisted.pi[{0, 2}]) v = 1 - v;
    bundles.push_back(twisted);
  }
  for (const auto& ps : bundles) {
    FactorGroups h = full_factors(ps.sk);
    PermGroup fast = wreath_group(ps, h);
    PermGroup slow = brute_wreath_oracle(ps, h);
    CHECK(fast.elements == slow.elements);
  }

  // the filtered sets really are groups
  PermGroup g = wreath_group_full(fixtures::chain22_system());
  CHECK(g.contains(identity_perm(g.ground.size())));
  for (const Perm& a : g.elements) {
    CHECK(g.contains(inverse(a)));
    for (const Perm& b : g.elements) CHECK(g.contains(compose(a, b)));
  }
}

TEST_CASE("non-full factors cut the group down") {
  // one block of arity 3 with the cyclic factor: order 3 instead of 6
  Skeleton sk = fixtures::chain_skeleton({3});
  ProjectionSystem ps = trivial_system(full_local_family(sk));
  PermGroup z3 = closure(GroundSet({"0", "1", "2"}), {{1, 2, 0}}, 10);
  PermGroup full = wreath_group_full(ps);
  PermGroup cyc = wreath_group(ps, {z3});
  CHECK(full.order() == 6);
  CHECK(cyc.order() == 3);
  CHECK(brute_wreath_oracle(ps, {z3}).elements == cyc.elements);

  PermGroup not_transitive = closure(GroundSet({"0", "1", "2"}), {{1, 0, 2}}, 10);
  CHECK_THROWS_AS(wreath_group(ps, {not_transitive}), Error);
}

TEST_CASE("rewriting the twist yields the flipped family") {
  ProjectionSystem w3 = fixtures::w3_twist();
  RewriteResult rw = rewrite_system(w3);
  // rho(0,j) keeps the bottom coordinate and flips the top one
  const auto& rho0 = rw.rho[0];
  CHECK(rho0[0].vals == std::vector<int>{0, 1});
  CHECK(rho0[1].vals == std::vector<int>{0, 0});
  IsoWitness w = verify_rewrite(w3);
  CHECK(w.verified);
  CHECK(w.source_order == 2);
  CHECK(w.target_order == 2);

  // trivial projections rewrite to the identity
  ProjectionSystem triv = fixtures::chain22_system();
  RewriteResult rwt = rewrite_system(triv);
  for (size_t d = 0; d < rwt.rho.size(); ++d)
    CHECK(rwt.rho[d] == triv.parts[d]);
  CHECK(verify_rewrite(triv).verified);
}

TEST_CASE("rewriting random twisted systems verifies against the oracle") {
  Rng rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    ProjectionSystem ps = random_projection_system(rng, 8);
    IsoWitness w = verify_rewrite(ps);
    CHECK(w.verified);
    RewriteResult rw = rewrite_system(ps);
    PermGroup target = wreath_group_full(trivial_system(rw.family));
    CHECK(w.target_order == target.order());
    CHECK(brute_wreath_oracle(ps, full_factors(ps.sk)).order() == w.source_order);
  }
}

TEST_CASE("finite character partitions") {
  FiniteCharacterResult triv = finite_character(fixtures::chain22_system());
  CHECK(triv.value);
  CHECK(triv.pieces.at(0).size() == 1);  // one piece suffices under restrictions

  FiniteCharacterResult twist = finite_character(fixtures::w3_twist());
  CHECK(twist.value);
  CHECK(twist.pieces.at(0).size() == 2);  // the twist forces {d1},{d2}
  CHECK(has_finite_character(fixtures::w3_twist()));

  CHECK_THROWS_AS(finite_character(fixtures::chain22_system(), 1), Error);  // search guard
}

TEST_CASE("homogeneity predicates") {
  CHECK(is_locally_homogeneous(fixtures::chain22_system()));
  CHECK(is_locally_homogeneous(fixtures::w3_twist()));
  GlobalDomain gd = domain_from_supports(fixtures::chain_skeleton({2, 2}), SupportTag::LF);
  CHECK(is_approximately_homogeneous(gd));

  // a lopsided three-element domain over an antichain: the equal-restriction
  // partitions pin every element, so nothing moves
  GlobalDomain lopsided;
  lopsided.sk = fixtures::antichain_skeleton({2, 2});
  lopsided.elems = {{0, 0}, {0, 1}, {1, 1}};
  CHECK(global_wreath_group(lopsided).order() == 1);
  CHECK_FALSE(is_approximately_homogeneous(lopsided));

  // on the rebuild of a full family the global filter and the block-wise
  // action acting through restrictions are the same group
  ProjectionSystem ps = trivial_system(locals_from_global(gd));
  PermGroup induced = induced_global_action(ps, wreath_group_full(ps), gd);
  CHECK(global_wreath_group(gd).elements == induced.elements);
}

TEST_CASE("padding keeps the group, with a verified witness") {
  PaddedSystem top = pad_top(fixtures::chain22_system(), 1);
  CHECK(top.witness.verified);
  CHECK(top.ps.sk.size() == 3);
  CHECK(wreath_group_full(top.ps).order() == 8);

  PaddedSystem bottom = pad_bottom(fixtures::w3_twist(), 2);
  CHECK(bottom.witness.verified);
  CHECK(wreath_group_full(bottom.ps).order() == 2);
  CHECK(validate_projection_system(bottom.ps).ok());

  Skeleton no_levels = fixtures::antichain_skeleton({2, 2});
  CHECK_THROWS_AS(pad_top(trivial_system(full_local_family(no_levels)), 1), Error);
}

TEST_CASE("sequence distances from an enumeration") {
  Skeleton sk = fixtures::chain_skeleton({2, 2, 2});
  // enumeration from the top: d3, d2, d1
  std::vector<int> order{2, 1, 0};
  std::vector<int> x{0, 0, 0}, y{1, 0, 0}, z{0, 0, 1};
  CHECK(sequence_distance(sk, x, y, order) == Rat(1, 4));  // differ only at the bottom
  CHECK(sequence_distance(sk, x, z, order) == Rat(1));     // differ at the top cone
  CHECK(sequence_distance(sk, x, x, order) == Rat(0));
  CHECK_THROWS_AS(sequence_distance(sk, x, y, {0, 0, 1}), Error);
}

TEST_CASE("skeleton rigidity") {
  CHECK(is_rigid_skeleton(fixtures::chain_skeleton({2, 2, 1})));  // chains never move
  CHECK_FALSE(is_rigid_skeleton(fixtures::antichain_skeleton({2, 2})));
  CHECK_FALSE(is_rigid_skeleton(fixtures::cherry_skeleton(2, 2, 1)));
  CHECK(is_rigid_skeleton(fixtures::cherry_skeleton(2, 1, 2)));  // asymmetric arities
}

TEST_CASE("the truncated tree of copies verifies on the pinned systems") {
  TreeFromWreath triv = tree_from_wreath(fixtures::trivial_system_fixture(), 2);
  CHECK(triv.witness.verified);
  CHECK(triv.witness.source_order == 1);
  CHECK(triv.witness.target_order == 1);

  CHECK_THROWS_AS(tree_from_wreath(fixtures::w3_twist(), 2), Error);  // depth too small

  // the twist needs a singleton root first
  PaddedSystem padded = pad_top(fixtures::w3_twist(), 1);
  std::set<int> untagged(padded.added_blocks.begin(), padded.added_blocks.end());
  TreeFromWreath tw = tree_from_wreath(padded.ps, 3, untagged);
  CHECK(tw.witness.verified);
  CHECK(tw.witness.source_order == 2);
  CHECK(tw.witness.target_order == 2);
}
