#ifndef UMW_SKELETON_HPP
#define UMW_SKELETON_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "umw/ground.hpp"
#include "umw/ltree.hpp"
#include "umw/rational.hpp"

namespace umw {

/// Finite partial order. The relation is stored reflexively and
/// transitively closed; construction checks antisymmetry.
struct Poset {
  GroundSet elems;
  std::vector<std::vector<bool>> rel;  // rel[a][b] : a <= b

  int size() const { return elems.size(); }
  bool le(int a, int b) const { return rel[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  bool lt(int a, int b) const { return a != b && le(a, b); }
  bool comparable(int a, int b) const { return le(a, b) || le(b, a); }
  std::vector<int> up_set(int a) const;  // ascending, includes a
  std::vector<int> maximal() const;
  std::vector<int> minimal() const;
};

Poset make_poset(GroundSet elems, const std::vector<std::pair<int, int>>& le_pairs);

/// Labeled partial order parameterizing a wreath product: a positive arity
/// N per element, and optionally level labels witnessing treeability.
struct Skeleton {
  Poset delta;
  std::vector<long long> N;
  std::optional<std::vector<Rat>> level;

  int size() const { return delta.size(); }
};

ValidationReport validate_skeleton(const Skeleton& sk);

/// The skeleton's poset as a leveled tree (throws MissingLevels when no
/// level map is present, InvalidSystem when the data is not treeable).
LTree skeleton_tree(const Skeleton& sk);
bool is_treeable(const Skeleton& sk);

/// A sequence over the up-set of its base element; values are aligned with
/// Poset::up_set(base).
struct Seq {
  int base = -1;
  std::vector<int> vals;

  bool operator==(const Seq& o) const { return base == o.base && vals == o.vals; }
  bool operator<(const Seq& o) const {
    return base != o.base ? base < o.base : vals < o.vals;
  }
};

int seq_value(const Skeleton& sk, const Seq& z, int at);        // at must be >= base
Seq seq_restrict(const Skeleton& sk, const Seq& z, int to);     // to >= base
Seq seq_perturb(const Skeleton& sk, const Seq& z, int value);   // change value at base
bool seq_extends(const Skeleton& sk, const Seq& lower, const Seq& upper);  // lower ⊇ upper
std::vector<int> seq_support(const Skeleton& sk, const Seq& z);
std::string seq_name(const Skeleton& sk, const Seq& z);

/// All sequences over up_set(base), values in [0, N), lexicographic order.
std::vector<Seq> all_seqs(const Skeleton& sk, int base);

/// Family of local domains: one nonempty set of sequences per element,
/// closed under restriction images and bottom-coordinate perturbation.
struct LocalFamily {
  Skeleton sk;
  std::vector<std::vector<Seq>> parts;  // sorted per block
};

ValidationReport validate_local_family(const LocalFamily& f);
LocalFamily full_local_family(const Skeleton& sk);  // parts = all sequences

/// Local domains with surjections replacing restriction. pi maps a sequence
/// index of the source block to a sequence index of the target block for
/// every related pair.
struct ProjectionSystem {
  Skeleton sk;
  std::vector<std::vector<Seq>> parts;
  std::map<std::pair<int, int>, std::vector<int>> pi;

  int seq_index(int block, const Seq& z) const;
  const Seq& project(int from, int to, const Seq& z) const;
  int project_index(int from, int to, int zi) const;
  long long total_seqs() const;
};

/// Report covers: first-item (perturbation) closure, surjectivity, the
/// restriction-congruence axiom and compositionality; offending tuples are
/// named.
ValidationReport validate_projection_system(const ProjectionSystem& ps);

ProjectionSystem trivial_system(const LocalFamily& f);     // pi = restriction
LocalFamily family_of(const ProjectionSystem& ps);         // forgets pi

/// Global domain over the full poset: each element is a total assignment.
struct GlobalDomain {
  Skeleton sk;
  std::vector<std::vector<int>> elems;  // sorted assignments, aligned with poset order
};

enum class SupportTag { Fin, LF, Wsp, Max };

/// On a finite poset every support is admissible for all four families, so
/// each tag yields the full product; the four are computed independently and
/// compared.
GlobalDomain domain_from_supports(const Skeleton& sk, SupportTag tag);
LocalFamily locals_from_global(const GlobalDomain& g);

/// Rebuilds the global domain of a full family; throws NotFull with a
/// non-extendable (block, sequence) witness otherwise.
GlobalDomain global_from_full(const LocalFamily& f);
bool is_full(const LocalFamily& f);
bool is_full(const ProjectionSystem& ps);  // coherent selections through pi

/// Support family membership flags.
struct SupportFlags {
  bool fin = false, lf = false, wsp = false, max = false;
};

/// Structural questions a support-family predicate needs answered. The
/// finite adapter computes them from a Poset; symbolic fixtures for infinite
/// orders (unit tests) answer by case analysis on their encoding.
class SupportUniverse {
 public:
  virtual ~SupportUniverse() = default;
  virtual bool set_is_finite() const = 0;
  virtual bool upcone_intersections_all_finite() const = 0;
  virtual bool has_infinite_ascending_chain() const = 0;
  virtual bool has_infinite_descending_chain_with_lower_bound() const = 0;
};

SupportFlags evaluate_supports(const SupportUniverse& u);
SupportFlags support_kind(const Poset& delta, const std::vector<int>& a);

/// Union of the local domains ordered by projection reachability, with the
/// block partition. Entry names are "block|v1,v2,...".
struct CanonicalPoset {
  std::vector<std::pair<int, int>> entries;  // (block, seq index), canonical order
  GroundSet ground;
  Poset poset;
  std::vector<std::vector<int>> blocks;  // block -> entry indices

  int entry_of(int block, int seq_index) const;
};

CanonicalPoset canonical_poset(const ProjectionSystem& ps);

/// A skeleton together with one of the four domain presentations.
struct SkeletonBundle {
  enum class Kind { Supports, Global, Locals, System } kind;
  Skeleton sk;
  SupportTag tag = SupportTag::LF;
  std::optional<GlobalDomain> global;
  std::optional<LocalFamily> locals;
  std::optional<ProjectionSystem> system;
};

SkeletonBundle bundle_from_supports(const Skeleton& sk, SupportTag tag);
SkeletonBundle bundle_from_global(GlobalDomain g);
SkeletonBundle bundle_from_locals(LocalFamily f);
SkeletonBundle bundle_from_system(ProjectionSystem ps);

/// Unified lowering: every bundle form becomes a projection system
/// (global -> locals + trivial projections).
ProjectionSystem to_system(const SkeletonBundle& b);

/// Condensed skeleton of a tree: classes, induced order and levels, and
/// cluster-size labels.
struct CondensedBundle {
  Skeleton sk;
  CondensedTree cond;
  PermGroup aut;  // of the original tree
};

CondensedBundle condensed_skeleton(const LTree& t, long long max_order = 1000000);

}  // namespace umw

#endif
