#include <doctest.h>

#include "fixtures.hpp"
#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/functors.hpp"
#include "umw/io.hpp"
#include "umw/pipelines.hpp"

using namespace umw;

namespace {

LTree u1_tree() { return ball_tree(fixtures::u1(), make_order({Rat(1), Rat(2), Rat(3)})).tree; }
LTree u2_tree() { return ball_tree(fixtures::u2(), make_order({Rat(1), Rat(2), Rat(3)})).tree; }

std::map<int, Seq> as_map(const LabelingResult& lab) {
  std::map<int, Seq> g;
  for (size_t i = 0; i < lab.nodes.size(); ++i) g[lab.nodes[i]] = lab.labels[i];
  return g;
}

}  // namespace

TEST_CASE("the pinned labeling of the cluster tree") {
  LTree t = u1_tree();
  CondensedBundle cb = condensed_skeleton(t);
  int bottom = cb.cond.tree.level_nodes(0).front();
  LabelingResult lab = sequence_labeling(t, cb, {}, bottom, {});

  CHECK(lab.enumeration.size() == 4);
  std::map<std::string, std::vector<int>> expected{
      {"{a}@1", {0, 0, 0}}, {"{b}@1", {1, 0, 0}}, {"{c}@1", {0, 1, 0}}, {"{d}@1", {1, 1, 0}}};
  for (size_t i = 0; i < lab.nodes.size(); ++i) {
    const std::string& name = t.nodes.name(lab.nodes[i]);
    auto it = expected.find(name);
    if (it != expected.end()) CHECK(lab.labels[i].vals == it->second);
  }
}

TEST_CASE("labeling a chain gives all-zero sequences") {
  LTree chain = make_ltree(make_order({Rat(1), Rat(2), Rat(3)}), GroundSet({"x", "y", "z"}),
                           {0, 1, 2}, {1, 2, -1});
  CondensedBundle cb = condensed_skeleton(chain);
  LabelingResult lab = sequence_labeling(chain, cb, {}, 0, {});
  for (const Seq& z : lab.labels)
    for (int v : z.vals) CHECK(v == 0);
}

TEST_CASE("labeling below a chain extends the boundary values") {
  LTree t = u1_tree();
  CondensedBundle cb = condensed_skeleton(t);
  int nab = t.nodes.index("{a,b}@2");
  int root = t.nodes.index("{a,b,c,d}@3");
  std::vector<int> chain{nab, root};
  int bottom = cb.cond.tree.level_nodes(0).front();
  // boundary: zero on both chain classes
  std::map<int, int> boundary{{cb.cond.class_of[static_cast<size_t>(nab)], 0},
                              {cb.cond.class_of[static_cast<size_t>(root)], 0}};
  LabelingResult lab = sequence_labeling(t, cb, chain, bottom, boundary);
  CHECK(lab.nodes.size() == 2);  // exactly the singleton balls below {a,b}
  for (size_t i = 0; i < lab.nodes.size(); ++i) {
    CHECK(lab.labels[i].vals[1] == 0);
    CHECK(lab.labels[i].vals[2] == 0);
  }

  std::map<int, int> bad{{cb.cond.class_of[static_cast<size_t>(nab)], 0}};
  CHECK_THROWS_AS(sequence_labeling(t, cb, chain, bottom, bad), Error);

  // a chain reaching the base class itself is rejected
  int na = t.nodes.index("{a}@1");
  std::vector<int> grounded{na, nab, root};
  std::map<int, int> full_boundary{{cb.cond.class_of[static_cast<size_t>(na)], 0},
                                   {cb.cond.class_of[static_cast<size_t>(nab)], 0},
                                   {cb.cond.class_of[static_cast<size_t>(root)], 0}};
  CHECK_THROWS_AS(sequence_labeling(t, cb, grounded, bottom, full_boundary), Error);
}

TEST_CASE("transfer rejects block-violating labelings") {
  LTree t = u1_tree();
  CondensedBundle cb = condensed_skeleton(t);
  int bottom = cb.cond.tree.level_nodes(0).front();
  LabelingResult lab = sequence_labeling(t, cb, {}, bottom, {});
  std::map<int, Seq> g = as_map(lab);
  ProjectionSystem ps = trivial_system(full_local_family(cb.sk));

  TransferResult ok = verify_labeling_transfer(t, cb, ps, g);
  CHECK(ok.witness.verified);
  CHECK(ok.aut.order() == 8);
  CHECK(ok.wreath.order() == 8);

  // swap a bottom label with a middle label: wrong block
  std::map<int, Seq> broken = g;
  int na = t.nodes.index("{a}@1");
  int nab = t.nodes.index("{a,b}@2");
  std::swap(broken[na], broken[nab]);
  CHECK_THROWS_AS(verify_labeling_transfer(t, cb, ps, broken), Error);
}

TEST_CASE("homogeneous pipeline on the worked spaces") {
  TheoremReport r1 = verify_homogeneous(fixtures::u1());
  CHECK(r1.pass());
  CHECK(r1.witnesses.size() == 3);
  for (auto& [k, v] : r1.orders)
    if (k == "iso" || k == "aut" || k == "wreath") CHECK(v == 8);

  TheoremReport r2 = verify_homogeneous(fixtures::two_points());
  CHECK(r2.pass());
  for (auto& [k, v] : r2.orders)
    if (k == "wreath") CHECK(v == 2);

  TheoremReport d = verify_discrete_homogeneous(fixtures::u1());
  CHECK(d.pass());

  TheoremReport r3 = verify_homogeneous(fixtures::u2());
  CHECK(r3.verdict == "DIAGNOSTIC");
  CHECK(r3.detail.find("not homogeneous") != std::string::npos);
}

TEST_CASE("homogeneous pipeline on the three-level binary space") {
  // eight leaves of a binary tree of depth three; the isometry group is the
  // iterated wreath product of three two-point swaps, order 2^7
  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::vector<Rat>> m(8, std::vector<Rat>(8, Rat(0)));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      if (x == y) continue;
      int diff = x ^ y;
      int level = diff >= 4 ? 3 : (diff >= 2 ? 2 : 1);
      m[static_cast<size_t>(x)][static_cast<size_t>(y)] = Rat(level);
    }
  UltraSpace u = make_space(names, m);
  REQUIRE(validate_space(u).ok());

  TheoremReport rep = verify_homogeneous(u);
  CHECK(rep.pass());
  for (auto& [k, v] : rep.orders) CHECK(v == 128);
  std::map<std::string, std::string> notes(rep.notes.begin(), rep.notes.end());
  CHECK(notes.at("skeleton_arity") == "2,2,2,1");
}

TEST_CASE("general pipeline handles the outlier space with projections") {
  TheoremReport rep = verify_general(fixtures::u2());
  CHECK(rep.pass());
  for (auto& [k, v] : rep.orders)
    if (k == "iso" || k == "aut" || k == "wreath") CHECK(v == 2);
  bool nontrivial = false, bottoms2 = false;
  for (auto& [k, v] : rep.notes) {
    if (k == "projections_nontrivial") nontrivial = v == "true";
    if (k == "bottom_classes") bottoms2 = v == "2";
  }
  CHECK(nontrivial);
  CHECK(bottoms2);
}

TEST_CASE("general pipeline degenerates to trivial projections on homogeneous input") {
  GeneralLabeling gl = build_general_labeling(u1_tree());
  CHECK(gl.bottom_classes.size() == 1);
  CHECK_FALSE(gl.projections_nontrivial);
  // every projection is a restriction
  for (auto& [key, table] : gl.ps.pi) {
    auto [d, g] = key;
    for (size_t zi = 0; zi < table.size(); ++zi) {
      Seq restr = seq_restrict(gl.ps.sk, gl.ps.parts[static_cast<size_t>(d)][zi], g);
      CHECK(table[zi] == gl.ps.seq_index(g, restr));
    }
  }
  TheoremReport rep = verify_general_tree(u1_tree());
  CHECK(rep.pass());

  TheoremReport one = verify_general(fixtures::one_point());
  CHECK(one.pass());
}

TEST_CASE("the homogeneous and general witnesses agree element for element") {
  LTree t = u1_tree();
  CondensedBundle cb = condensed_skeleton(t);
  int bottom = cb.cond.tree.level_nodes(0).front();
  std::map<int, Seq> hom = as_map(sequence_labeling(t, cb, {}, bottom, {}));
  GeneralLabeling gl = build_general_labeling(t);
  CHECK(hom == gl.g);
}

TEST_CASE("exact pipeline runs the cross-class labeling") {
  TheoremReport r2 = verify_exact_tree(u2_tree());
  CHECK(r2.pass());
  for (auto& [k, v] : r2.orders) CHECK(v == 2);

  TheoremReport r1 = verify_exact_tree(u1_tree());
  CHECK(r1.pass());

  LTree chain = make_ltree(make_order({Rat(1), Rat(2)}), GroundSet({"x", "y"}), {0, 1}, {1, -1});
  CHECK(verify_exact_tree(chain).pass());

  TheoremReport rs = verify_exact(fixtures::u2());
  CHECK(rs.pass());
}

TEST_CASE("general and exact pipelines hold up on seeded random trees") {
  Rng rng(67);
  int multi_bottom = 0;
  for (int trial = 0; trial < 15; ++trial) {
    LTree t = random_pruned_tree(rng, 8);
    TheoremReport g = verify_general_tree(t);
    CHECK(g.pass());
    TheoremReport e = verify_exact_tree(t);
    CHECK(e.pass());
    for (auto& [k, v] : g.notes)
      if (k == "bottom_classes" && v != "1") ++multi_bottom;
  }
  CHECK(multi_bottom > 0);  // the sample exercises the cross-class machinery
}

TEST_CASE("condensed skeletons of ball trees are rigid") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    UltraSpace u = random_space(rng, 6);
    CondensedBundle cb = condensed_skeleton(ball_tree(u, canonical_levels(u)).tree);
    CHECK(is_rigid_skeleton(cb.sk));
  }
  TheoremReport rep = verify_exact_tree(u2_tree());
  bool noted = false;
  for (auto& [k, v] : rep.notes)
    if (k == "skeleton_rigid") noted = v == "true";
  CHECK(noted);
}

TEST_CASE("the outlier skeleton's wreath group matches the exhaustive filter") {
  LTree t = u2_tree();
  CondensedBundle cb = condensed_skeleton(t);
  ProjectionSystem ps = trivial_system(full_local_family(cb.sk));
  CHECK(ps.total_seqs() == 6);
  PermGroup oracle = brute_wreath_oracle(ps, full_factors(ps.sk));
  CHECK(oracle.order() == 2);
  CHECK(wreath_group_full(ps).elements == oracle.elements);
}

TEST_CASE("wideness diagnostics and skeleton simplification") {
  TheoremReport rep = wideness_diagnostics(fixtures::u1(), PipelineConfig{1000000, -1, 2});
  CHECK(rep.pass());
  std::map<std::string, std::string> notes(rep.notes.begin(), rep.notes.end());
  CHECK(notes.at("wide_at_1") == "true");
  CHECK(notes.at("wide_at_2") == "true");
  CHECK(notes.at("quasi_maximal") == "true");
  CHECK(notes.at("simplified_arity") == "2,2");
  for (auto& [k, v] : rep.orders) CHECK(v == 8);

  TheoremReport two = wideness_diagnostics(fixtures::two_points(), PipelineConfig{1000000, -1, 2});
  CHECK(two.pass());

  CHECK_THROWS_AS(wideness_diagnostics(fixtures::u2()), Error);  // skeleton is a tree
}

TEST_CASE("simplification keeps a bottom run representative") {
  SimplifiedSkeleton s = simplify_skeleton(fixtures::chain_skeleton({1, 1, 2}));
  CHECK(s.witness.verified);
  CHECK(s.sk.size() == 2);  // the run top plus the wide block
  CHECK(s.sk.N == std::vector<long long>{1, 2});

  SimplifiedSkeleton all_ones = simplify_skeleton(fixtures::chain_skeleton({1, 1}));
  CHECK(all_ones.sk.size() == 1);
  CHECK(all_ones.witness.verified);

  SimplifiedSkeleton mid = simplify_skeleton(fixtures::chain_skeleton({2, 1, 2}));
  CHECK(mid.sk.N == std::vector<long long>{2, 2});
  CHECK(mid.witness.verified);  // orders must agree across the drop

  CHECK_THROWS_AS(simplify_skeleton(fixtures::cherry_skeleton(2, 2, 1)), Error);
}

TEST_CASE("roundtrip through the tree of copies") {
  PipelineConfig cfg;
  cfg.depth = 3;
  TheoremReport w3 = roundtrip_wreath(bundle_from_system(fixtures::w3_twist()), cfg);
  CHECK(w3.pass());
  for (auto& [k, v] : w3.orders) CHECK(v == 2);

  TheoremReport chain = roundtrip_wreath(bundle_from_system(fixtures::chain22_system()), cfg);
  CHECK(chain.pass());
  for (auto& [k, v] : chain.orders) CHECK(v == 8);

  PipelineConfig small;
  small.depth = 3;
  TheoremReport triv =
      roundtrip_wreath(bundle_from_system(fixtures::trivial_system_fixture()), small);
  CHECK(triv.pass());
  for (auto& [k, v] : triv.orders) CHECK(v == 1);
}

TEST_CASE("reports are deterministic across reruns") {
  TheoremReport a = verify_general(fixtures::u2());
  TheoremReport b = verify_general(fixtures::u2());
  Json ja = report_to_json(a, "x");
  Json jb = report_to_json(b, "x");
  CHECK(dump_canonical(ja) == dump_canonical(jb));
}

TEST_CASE("corpus instances all pass the general pipeline") {
  CorpusRun run = run_corpus(1, 10, 5);
  CHECK(run.reports.size() == 10);
  for (const TheoremReport& r : run.reports) CHECK(r.pass());

  CorpusRun empty = run_corpus(1, 0, 5);
  CHECK(empty.reports.empty());

  // rerun determinism, byte for byte
  CorpusRun again = run_corpus(1, 10, 5);
  for (size_t i = 0; i < run.spaces.size(); ++i)
    CHECK(dump_canonical(space_to_json(run.spaces[i])) ==
          dump_canonical(space_to_json(again.spaces[i])));
}
