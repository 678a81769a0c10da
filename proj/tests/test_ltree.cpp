#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/functors.hpp"
#include "umw/ltree.hpp"

using namespace umw;

namespace {

LTree chain3() {
  return make_ltree(make_order({Rat(1), Rat(2), Rat(3)}), GroundSet({"x", "y", "z"}),
                    {0, 1, 2}, {1, 2, -1});
}

LTree u1_tree() { return ball_tree(fixtures::u1(), make_order({Rat(1), Rat(2), Rat(3)})).tree; }
LTree u2_tree() { return ball_tree(fixtures::u2(), make_order({Rat(1), Rat(2), Rat(3)})).tree; }

}  // namespace

TEST_CASE("construction rejects level gaps and orphan nodes") {
  CHECK_THROWS_AS(make_ltree(make_order({Rat(1), Rat(2), Rat(3)}), GroundSet({"x", "y"}),
                             {0, 2}, {1, -1}),
                  Error);  // parent skips a level
  CHECK_THROWS_AS(make_ltree(make_order({Rat(1), Rat(2)}), GroundSet({"x", "y"}), {0, 1},
                             {1, 0}),
                  Error);  // top node with a parent
}

TEST_CASE("validation flags trees with two roots") {
  LTree forest = make_ltree(make_order({Rat(1)}), GroundSet({"x", "y"}), {0, 0}, {-1, -1});
  ValidationReport rep = validate_ltree(forest);
  CHECK_FALSE(rep.ok());
  CHECK(rep.violations.front().find("upper bound") != std::string::npos);

  CHECK(validate_ltree(chain3()).ok());
  CHECK(validate_ltree(u1_tree()).ok());
}

TEST_CASE("splitting levels of the cluster tree") {
  LTree t = u1_tree();
  // nodes are named {points}@level
  int na = t.nodes.index("{a}@1");
  int nb = t.nodes.index("{b}@1");
  int nc = t.nodes.index("{c}@1");
  int nab = t.nodes.index("{a,b}@2");
  CHECK(t.size() == 7);
  CHECK(split_level(t, na, nb) == Rat(1));
  CHECK(split_level(t, na, nc) == Rat(2));
  CHECK_THROWS_AS(split_level(t, na, nab), Error);  // comparable
  // a chain has no incomparable pairs at all
  LTree c = chain3();
  for (int a = 0; a < c.size(); ++a)
    for (int b = 0; b < c.size(); ++b) CHECK(c.comparable(a, b));
}

TEST_CASE("branches and pruning") {
  CHECK(branches(chain3()).size() == 1);
  CHECK(is_pruned(chain3()));
  CHECK(branches(u1_tree()).size() == 4);
  CHECK(is_pruned(u1_tree()));

  // node at the top level with no descendant at the bottom
  LTree dangling = make_ltree(make_order({Rat(1), Rat(2)}), GroundSet({"x", "r", "s"}),
                              {0, 1, 1}, {1, -1, -1});
  // two tops: invalid as a tree, but pruning is independent of that
  CHECK_FALSE(is_pruned(dangling));
}

TEST_CASE("restriction keeps the upper part") {
  LTree r = restrict_tree(u1_tree(), Rat(2));
  CHECK(r.size() == 3);
  CHECK(r.order.size() == 2);
  CHECK(validate_ltree(r).ok());
  CHECK(is_pruned(r));
}

TEST_CASE("automorphism groups match the enumeration oracle") {
  CHECK(aut_group(chain3()).order() == 1);
  PermGroup a1 = aut_group(u1_tree());
  CHECK(a1.order() == 8);
  CHECK(a1.elements == oracles::tree_automorphisms(u1_tree()));
  PermGroup a2 = aut_group(u2_tree());
  CHECK(u2_tree().size() == 6);
  CHECK(a2.order() == 2);
  CHECK(a2.elements == oracles::tree_automorphisms(u2_tree()));

  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    LTree t = random_pruned_tree(rng, 7);
    CHECK(aut_group(t).elements == oracles::tree_automorphisms(t));
  }
}

TEST_CASE("condensation of the cluster tree is a chain with arities 2,2,1") {
  LTree t = u1_tree();
  CondensedTree c = condense(t);
  CHECK(c.tree.size() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(c.tree.comparable(a, b));
  PermGroup aut = aut_group(t);
  CHECK(cluster_sizes(t, aut, c) == std::vector<long long>{2, 2, 1});

  // cluster of a bottom node: its sibling under the same 2-point ball
  int na = t.nodes.index("{a}@1");
  int nb = t.nodes.index("{b}@1");
  CHECK(level_cluster(t, aut, na) == std::vector<int>{na, nb});
  int root = t.nodes.index("{a,b,c,d}@3");
  CHECK(level_cluster(t, aut, root) == std::vector<int>{root});
}

TEST_CASE("condensation of the outlier tree keeps five classes") {
  LTree t = u2_tree();
  CondensedTree c = condense(t);
  CHECK(c.tree.size() == 5);
  PermGroup aut = aut_group(t);
  std::vector<long long> n = cluster_sizes(t, aut, c);
  long long twos = 0, ones = 0;
  for (long long v : n) (v == 2 ? twos : ones)++;
  CHECK(twos == 1);
  CHECK(ones == 4);
  CHECK(validate_ltree(c.tree).ok());
}

TEST_CASE("specialness and homogeneity of trees") {
  CHECK(is_special(chain3()));
  CHECK(is_special(u1_tree()));
  CHECK(is_special(u2_tree()));
  CHECK(is_homogeneous_tree(chain3()));
  CHECK(is_homogeneous_tree(u1_tree()));
  CHECK_FALSE(is_homogeneous_tree(u2_tree()));

  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) CHECK(is_special(random_pruned_tree(rng, 7)));
}

TEST_CASE("branch lifting picks class-compatible representatives") {
  LTree t = u1_tree();
  CondensedTree c = condense(t);
  Branch qb(static_cast<size_t>(c.tree.order.size()));
  for (int l = 0; l < c.tree.order.size(); ++l) qb[static_cast<size_t>(l)] = c.tree.level_nodes(l).front();
  int nb = t.nodes.index("{b}@1");
  Branch lifted = lift_branch(t, c, qb, 0, nb);
  CHECK(lifted[0] == nb);
  for (int l = 0; l < t.order.size(); ++l)
    CHECK(c.class_of[static_cast<size_t>(lifted[static_cast<size_t>(l)])] == qb[static_cast<size_t>(l)]);

  int nab = t.nodes.index("{a,b}@2");
  Branch lifted2 = lift_branch(t, c, qb, 1, nab);
  CHECK(lifted2[1] == nab);
  CHECK_THROWS_AS(lift_branch(t, c, qb, 0, nab), Error);  // wrong class at that level
}

TEST_CASE("pushdown property holds on finite trees") {
  CHECK(pushdown_property(chain3()).holds);
  CHECK(pushdown_property(u1_tree()).holds);
  CHECK(pushdown_property(u2_tree()).holds);

  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(pushdown_property(random_pruned_tree(rng, 7)).holds);
}

TEST_CASE("derived trees revalidate after every construction") {
  Rng rng(43);
  for (int trial = 0; trial < 8; ++trial) {
    LTree t = random_pruned_tree(rng, 8);
    CHECK(validate_ltree(t).ok());
    CondensedTree c = condense(t);
    CHECK(validate_ltree(c.tree).ok());
    // class relation respects levels and ancestors
    PermGroup aut = aut_group(t);
    for (const Perm& p : aut.elements)
      for (int v = 0; v < t.size(); ++v) {
        int w = p[static_cast<size_t>(v)];
        CHECK(t.level[static_cast<size_t>(v)] == t.level[static_cast<size_t>(w)]);
        for (int l = t.level[static_cast<size_t>(v)]; l < t.order.size(); ++l)
          CHECK(c.class_of[static_cast<size_t>(t.up(v, l))] ==
                c.class_of[static_cast<size_t>(t.up(w, l))]);
      }
  }
}
