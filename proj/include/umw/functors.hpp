#ifndef UMW_FUNCTORS_HPP
#define UMW_FUNCTORS_HPP

#include <vector>

#include "umw/ltree.hpp"
#include "umw/perm.hpp"
#include "umw/ultrametric.hpp"

namespace umw {

/// Tree of open balls of a space: one node per distinct (ball, level) pair,
/// ordered by inclusion, with levels drawn from the given order. node_of
/// maps (point, level index) to the node of the ball around that point.
struct BallTree {
  LTree tree;
  std::vector<std::vector<int>> node_of;  // [point][level index]
};

/// Requires the distance set inside the order, a level at or below the
/// minimal distance, and one above the maximal distance
/// (ConditionTwoViolated otherwise). The result is pruned; that is checked.
BallTree ball_tree(const UltraSpace& u, const LinearOrder& levels);

/// Node map induced by a distance-preserving map of points (NotIsometric
/// otherwise). Both spaces must have been turned into trees over the same
/// level order.
std::vector<int> ball_tree_map(const UltraSpace& u, const BallTree& bu,
                               const UltraSpace& v, const BallTree& bv,
                               const std::vector<int>& psi);

/// Verifies that psi -> induced node map is an injective homomorphism from
/// the isometry group onto the automorphism group of the ball tree.
struct BallTreeIso {
  BallTree bt;
  PermGroup iso;
  PermGroup aut;
  IsoWitness witness;
};

BallTreeIso verify_ball_tree_iso(const UltraSpace& u, const LinearOrder& levels,
                                 long long max_order = 1000000);

/// Level order derived from the space itself: the distance set, its minimum,
/// twice its maximum, plus for every point pair the largest level below
/// which no isometry moves one point near the other. A one-point space gets
/// the sentinel order {1,2}.
LinearOrder canonical_levels(const UltraSpace& u, long long max_order = 1000000);

/// Interleaved embedding of levels into distances: lo(l) < hi(l) < lo(l').
struct LevelEmbedding {
  LinearOrder order;
  std::vector<Rat> lo, hi;  // aligned with order
};

LevelEmbedding make_embedding(LinearOrder order, std::vector<Rat> lo, std::vector<Rat> hi);
LevelEmbedding default_embedding(const LinearOrder& order);

/// Ultrametric on the nodes of a pruned tree: comparable pairs sit at the
/// lo-image of the upper level, incomparable pairs at the hi-image of their
/// splitting level. Throws NotPruned.
UltraSpace tree_space(const LTree& t, const LevelEmbedding& emb);

/// Both groups on the node set: tree automorphisms always embed into the
/// isometries of the derived space; equality is reported, not assumed,
/// because finite level orders break the converse in general.
struct TreeSpaceDiagnostic {
  PermGroup aut;
  PermGroup iso;
  bool equal = false;
};

TreeSpaceDiagnostic tree_space_diagnostic(const LTree& t, const LevelEmbedding& emb,
                                          long long max_order = 1000000);

/// Appends a descending chain of k fresh levels below every bottom node;
/// the witness certifies the automorphism group is unchanged.
struct PaddedTree {
  LTree tree;
  IsoWitness witness;
};

PaddedTree pad_chain(const LTree& t, int k, long long max_order = 1000000);

/// Binary comb: all length-k bit strings, with the distance of two strings
/// the radius indexed by their longest common prefix in the
/// length-then-lexicographic enumeration of shorter strings.
struct RigidComb {
  int depth = 0;
  std::vector<std::string> points;  // length-then-lex bit strings of length k
  std::vector<Rat> radii;           // strictly decreasing, one per proper prefix
};

RigidComb rigid_comb(int depth, std::vector<Rat> radii);
UltraSpace comb_space(const RigidComb& comb);

/// Geometric default radii r, r/2, r/4, ... below the given bound.
std::vector<Rat> default_radii(int depth, const Rat& below);

/// Point replacement: every point of the space becomes a copy of the comb;
/// distances within a copy come from the comb, across copies from the space.
/// All radii must be smaller than the minimal distance (RadiiTooLarge).
UltraSpace comb_product(const UltraSpace& u, const RigidComb& comb);

}  // namespace umw

#endif
