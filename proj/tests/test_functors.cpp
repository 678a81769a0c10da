#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/functors.hpp"

using namespace umw;

TEST_CASE("ball tree shapes") {
  BallTree one = ball_tree(fixtures::one_point(), make_order({Rat(1), Rat(2)}));
  CHECK(one.tree.size() == 2);

  BallTree b1 = ball_tree(fixtures::u1(), make_order({Rat(1), Rat(2), Rat(3)}));
  CHECK(b1.tree.size() == 7);
  CHECK(b1.tree.level_nodes(0).size() == 4);
  CHECK(b1.tree.level_nodes(1).size() == 2);
  CHECK(b1.tree.level_nodes(2).size() == 1);

  BallTree b2 = ball_tree(fixtures::u2(), make_order({Rat(1), Rat(2), Rat(3)}));
  CHECK(b2.tree.size() == 6);

  CHECK_THROWS_AS(ball_tree(fixtures::u1(), make_order({Rat(1), Rat(2)})), Error);
  CHECK_THROWS_AS(ball_tree(fixtures::u1(), make_order({Rat(2), Rat(3)})), Error);
}

TEST_CASE("node maps of isometries act on balls") {
  UltraSpace u = fixtures::u1();
  LinearOrder levels = make_order({Rat(1), Rat(2), Rat(3)});
  BallTree bt = ball_tree(u, levels);

  std::vector<int> ident{0, 1, 2, 3};
  std::vector<int> ab{1, 0, 2, 3};
  CHECK(ball_tree_map(u, bt, u, bt, ident) == identity_perm(bt.tree.size()));

  std::vector<int> f = ball_tree_map(u, bt, u, bt, ab);
  int na = bt.tree.nodes.index("{a}@1");
  int nb = bt.tree.nodes.index("{b}@1");
  CHECK(f[static_cast<size_t>(na)] == nb);
  CHECK(f[static_cast<size_t>(nb)] == na);
  for (int v = 0; v < bt.tree.size(); ++v)
    if (v != na && v != nb) CHECK(f[static_cast<size_t>(v)] == v);

  std::vector<int> not_iso{1, 2, 0, 3};  // moves a cluster point onto the far side
  CHECK_THROWS_AS(ball_tree_map(u, bt, u, bt, not_iso), Error);
}

TEST_CASE("isometry group transfers onto the ball tree") {
  BallTreeIso r = verify_ball_tree_iso(fixtures::u1(), make_order({Rat(1), Rat(2), Rat(3)}));
  CHECK(r.witness.verified);
  CHECK(r.iso.order() == 8);
  CHECK(r.aut.order() == 8);

  Rng rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    UltraSpace u = random_space(rng, 6);
    BallTreeIso w = verify_ball_tree_iso(u, canonical_levels(u));
    CHECK(w.witness.verified);
    CHECK(w.iso.order() == w.aut.order());
  }
}

TEST_CASE("every point of a ball indexes its node") {
  Rng rng(59);
  for (int trial = 0; trial < 6; ++trial) {
    UltraSpace u = random_space(rng, 6);
    LinearOrder levels = canonical_levels(u);
    BallTree bt = ball_tree(u, levels);
    std::vector<bool> hit(static_cast<size_t>(bt.tree.size()), false);
    for (int x = 0; x < u.size(); ++x)
      for (int l = 0; l < levels.size(); ++l) {
        int node = bt.node_of[static_cast<size_t>(x)][static_cast<size_t>(l)];
        hit[static_cast<size_t>(node)] = true;
        for (int y : ball(u, x, levels.label(l)))
          CHECK(bt.node_of[static_cast<size_t>(y)][static_cast<size_t>(l)] == node);
      }
    for (bool b : hit) CHECK(b);  // the point-level map is onto the nodes
  }
}

TEST_CASE("point stabilizers transfer to node stabilizers at the base level") {
  Rng rng(61);
  std::vector<UltraSpace> spaces{fixtures::u1(), fixtures::u2()};
  for (int trial = 0; trial < 5; ++trial) spaces.push_back(random_space(rng, 6));
  for (const UltraSpace& u : spaces) {
    LinearOrder levels = canonical_levels(u);
    BallTree bt = ball_tree(u, levels);
    PermGroup iso = iso_group(u);
    PermGroup aut = aut_group(bt.tree);
    for (int x = 0; x < u.size(); ++x) {
      // the base level sits at or below every distance, so the level-0 ball
      // around x is {x} and fixing x is fixing that node
      PermGroup stab_point = stabilizer(iso, x);
      int node = bt.node_of[static_cast<size_t>(x)][0];
      PermGroup stab_node = stabilizer(aut, node);
      std::vector<Perm> lifted;
      for (const Perm& psi : stab_point.elements)
        lifted.push_back(ball_tree_map(u, bt, u, bt, psi));
      std::sort(lifted.begin(), lifted.end());
      CHECK(lifted == stab_node.elements);
    }
  }
}

TEST_CASE("canonical level orders") {
  LinearOrder l1 = canonical_levels(fixtures::u1());
  CHECK(l1.labels == std::vector<Rat>{Rat(1), Rat(2), Rat(4)});
  LinearOrder l2 = canonical_levels(fixtures::u2());
  CHECK(l2.labels == std::vector<Rat>{Rat(1), Rat(2), Rat(4)});
  LinearOrder l0 = canonical_levels(fixtures::one_point());
  CHECK(l0.labels == std::vector<Rat>{Rat(1), Rat(2)});
}

TEST_CASE("tree metric values on the cluster tree") {
  LinearOrder levels = make_order({Rat(1), Rat(2), Rat(3)});
  BallTree bt = ball_tree(fixtures::u1(), levels);
  LevelEmbedding emb = make_embedding(
      levels, {Rat(10), Rat(20), Rat(30)}, {Rat(11), Rat(21), Rat(31)});
  UltraSpace sp = tree_space(bt.tree, emb);

  int na = sp.points.index("{a}@1");
  int nb = sp.points.index("{b}@1");
  int nab = sp.points.index("{a,b}@2");
  int root = sp.points.index("{a,b,c,d}@3");
  CHECK(sp.d(na, nb) == Rat(11));   // incomparable, split level 1
  CHECK(sp.d(na, nab) == Rat(20));  // comparable, upper level 2
  CHECK(sp.d(root, na) == Rat(30));
  CHECK(sp.d(root, nab) == Rat(30));

  // two comparable nodes over a two-level order
  LTree chain2 = make_ltree(make_order({Rat(0), Rat(1)}), GroundSet({"x", "y"}), {0, 1}, {1, -1});
  LevelEmbedding e2 = make_embedding(chain2.order, {Rat(1), Rat(3)}, {Rat(2), Rat(4)});
  UltraSpace sp2 = tree_space(chain2, e2);
  CHECK(sp2.d(0, 1) == Rat(3));
}

TEST_CASE("tree metric diagnostic: equality can fail on short chains") {
  LinearOrder levels = make_order({Rat(1), Rat(2), Rat(3)});
  BallTree bt = ball_tree(fixtures::u1(), levels);
  LevelEmbedding emb = make_embedding(
      levels, {Rat(10), Rat(20), Rat(30)}, {Rat(11), Rat(21), Rat(31)});
  TreeSpaceDiagnostic d1 = tree_space_diagnostic(bt.tree, emb);
  CHECK(d1.equal);
  CHECK(d1.aut.order() == 8);
  CHECK(d1.iso.order() == 8);

  LTree chain2 = make_ltree(make_order({Rat(0), Rat(1)}), GroundSet({"x", "y"}), {0, 1}, {1, -1});
  TreeSpaceDiagnostic d2 = tree_space_diagnostic(chain2, default_embedding(chain2.order));
  CHECK(d2.aut.order() == 1);
  CHECK(d2.iso.order() == 2);  // any two points swap
  CHECK_FALSE(d2.equal);

  LTree single = make_ltree(make_order({Rat(1)}), GroundSet({"x"}), {0}, {-1});
  TreeSpaceDiagnostic d3 = tree_space_diagnostic(single, default_embedding(single.order));
  CHECK(d3.equal);
}

TEST_CASE("chain padding preserves the automorphism group") {
  LTree chain2 = make_ltree(make_order({Rat(0), Rat(1)}), GroundSet({"x", "y"}), {0, 1}, {1, -1});
  PaddedTree p1 = pad_chain(chain2, 1);
  CHECK(p1.tree.size() == 3);
  CHECK(p1.witness.verified);
  CHECK(aut_group(p1.tree).order() == 1);

  LinearOrder levels = make_order({Rat(1), Rat(2), Rat(3)});
  LTree t = ball_tree(fixtures::u1(), levels).tree;
  PaddedTree p2 = pad_chain(t, 2);
  CHECK(p2.tree.size() == 7 + 8);
  CHECK(p2.witness.verified);
  CHECK(aut_group(p2.tree).order() == 8);

  PaddedTree p0 = pad_chain(t, 0);
  CHECK(p0.tree.size() == t.size());
  CHECK(p0.witness.verified);
}

TEST_CASE("comb spaces have the expected sibling-swap groups") {
  for (int k = 1; k <= 3; ++k) {
    RigidComb comb = rigid_comb(k, default_radii(k, Rat(1)));
    UltraSpace cu = comb_space(comb);
    long long expected = 1LL << (1LL << (k - 1));
    CHECK(iso_group(cu).order() == expected);
  }
  CHECK_THROWS_AS(rigid_comb(2, default_radii(1, Rat(1))), Error);  // radii count
  CHECK_THROWS_AS(rigid_comb(1, {Rat(0)}), Error);
}

TEST_CASE("comb products") {
  RigidComb comb = rigid_comb(1, default_radii(1, Rat(1)));
  UltraSpace prod1 = comb_product(fixtures::one_point(), comb);
  CHECK(prod1.size() == 2);
  CHECK(iso_group(prod1).order() == 2);

  // radii at or above the minimal distance are rejected
  CHECK_THROWS_AS(comb_product(fixtures::u1(), rigid_comb(1, {Rat(1)})), Error);

  // every isometry of the product preserves the copy partition
  UltraSpace prod = comb_product(fixtures::u1(), comb);
  PermGroup iso = iso_group(prod);
  int nc = 2;
  for (const Perm& p : iso.elements)
    for (int a = 0; a < prod.size(); ++a)
      for (int b = 0; b < prod.size(); ++b)
        if (a / nc == b / nc)
          CHECK(p[static_cast<size_t>(a)] / nc == p[static_cast<size_t>(b)] / nc);
}
