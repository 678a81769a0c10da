#ifndef UMW_LTREE_HPP
#define UMW_LTREE_HPP

#include <optional>
#include <string>
#include <vector>

#include "umw/ground.hpp"
#include "umw/perm.hpp"
#include "umw/rational.hpp"
#include "umw/ultrametric.hpp"

namespace umw {

/// Finite linear order of level labels, strictly ascending.
struct LinearOrder {
  std::vector<Rat> labels;

  int size() const { return static_cast<int>(labels.size()); }
  const Rat& label(int i) const { return labels[static_cast<size_t>(i)]; }
  int index_of(const Rat& r) const;  // throws UnknownElement
  bool contains(const Rat& r) const;
};

LinearOrder make_order(std::vector<Rat> labels);

/// Finite leveled tree. Each node carries a level index into `order`; the
/// ancestor map is primary: up(t, l) is the unique node above t at level l.
/// Storage is one parent link per node (the ancestor at the next level
/// index), from which the full up table is composed at construction.
/// The tree order is derived: t <= t'  iff  up(t, level(t')) == t'.
struct LTree {
  LinearOrder order;
  GroundSet nodes;
  std::vector<int> level;   // node -> level index
  std::vector<int> parent;  // node -> node at level+1, or -1 at the top level

  int size() const { return nodes.size(); }
  int up(int t, int level_index) const;  // -1 if level_index < level(t)
  bool le(int t, int s) const;           // t <=_T s
  bool comparable(int t, int s) const;
  const Rat& level_label(int t) const { return order.label(level[static_cast<size_t>(t)]); }

  /// Nodes at a given level index, ascending.
  std::vector<int> level_nodes(int level_index) const;

 private:
  friend LTree make_ltree(LinearOrder, GroundSet, std::vector<int>, std::vector<int>);
  std::vector<std::vector<int>> up_;  // [node][level_index] ancestor, -1 below own level
};

/// Builds the tree and composes the up table. Throws SchemaError on
/// structural breakage (bad indices, level gaps, parent cycles).
LTree make_ltree(LinearOrder order, GroundSet nodes, std::vector<int> level,
                 std::vector<int> parent);

/// Checks the leveled-tree axioms exhaustively: level surjectivity, ancestor
/// coherence, order/level monotonicity, common upper bounds, and existence
/// of splitting levels for incomparable pairs.
ValidationReport validate_ltree(const LTree& t);

/// Largest level >= both nodes' levels at which their ancestors differ.
/// Throws Comparable when the two nodes are comparable.
Rat split_level(const LTree& tr, int t, int s);
int split_level_index(const LTree& tr, int t, int s);

/// A branch selects one node per level, closed under the ancestor map.
using Branch = std::vector<int>;  // indexed by level index

std::vector<Branch> branches(const LTree& t);
bool is_pruned(const LTree& t);

/// Restriction to the nodes at levels >= the given label.
LTree restrict_tree(const LTree& t, const Rat& min_label);

/// Automorphism group (level-preserving order isomorphisms onto itself), by
/// backtracking down the levels with subtree-shape pruning.
PermGroup aut_group(const LTree& t, long long max_order = 1000000);

/// Reference oracle: plain filter of Sym(nodes).
PermGroup aut_group_brute(const LTree& t);

/// Quotient of the tree by the orbit relation of its automorphism group.
/// Quotient nodes are named "d1","d2",... in order of (level, least member).
struct CondensedTree {
  LTree tree;                 // the quotient
  std::vector<int> class_of;  // original node -> quotient node
  std::vector<std::vector<int>> members;  // quotient node -> original nodes
};

CondensedTree condense(const LTree& t, long long max_order = 1000000);

/// C-set of a node: itself plus the orbit-mates splitting exactly at its own
/// level. Its size is the cluster label of the node's class.
std::vector<int> level_cluster(const LTree& t, const PermGroup& aut, int node);

/// Cluster sizes per condensed class; equality across representatives is
/// checked, not assumed.
std::vector<long long> cluster_sizes(const LTree& t, const PermGroup& aut,
                                     const CondensedTree& c);

/// True iff the condensed tree again satisfies the leveled-tree axioms.
/// Finite level orders make this automatic; the validator still runs.
bool is_special(const LTree& t);

/// True iff the condensed tree is a chain.
bool is_homogeneous_tree(const LTree& t);

/// Lift of a condensed branch: a branch b' of the tree with b'(at) = node
/// and b'(l) in the class b(l) for every level l. Throws NotInClass if the
/// node does not lie in b(at).
Branch lift_branch(const LTree& t, const CondensedTree& c, const Branch& b, int at,
                   int node);

/// For every proper upward-closed chain C and node t whose class lies below
/// the classes of C, some orbit-mate of t must sit below all of C. Returns
/// the first counterexample (chain minimum, node) if the check fails.
struct PushdownResult {
  bool holds = true;
  std::optional<std::pair<int, int>> counterexample;
};

PushdownResult pushdown_property(const LTree& t, long long max_order = 1000000);

}  // namespace umw

#endif
