#ifndef UMW_WREATH_HPP
#define UMW_WREATH_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "umw/ltree.hpp"
#include "umw/perm.hpp"
#include "umw/skeleton.hpp"

namespace umw {

/// Per-coordinate factor groups: H[d] is a transitive permutation group on
/// {0..N_d-1} (ground names "0","1",...).
using FactorGroups = std::vector<PermGroup>;

FactorGroups full_factors(const Skeleton& sk, long long max_order = 1000000);

/// The wreath product as the group of block-preserving order-automorphisms
/// of the canonical poset whose coordinate action lies in H, found by
/// backtracking. With full symmetric factors the coordinate condition is
/// skipped during the search and re-checked afterwards.
PermGroup wreath_group(const ProjectionSystem& ps, const FactorGroups& h,
                       long long max_order = 1000000);
PermGroup wreath_group_full(const ProjectionSystem& ps, long long max_order = 1000000);
PermGroup wreath_group(const SkeletonBundle& b, long long max_order = 1000000);

/// Literal filter of Sym(union of local domains) by the block, projection
/// and coordinate conditions. Correctness oracle; guarded to 8 sequences.
PermGroup brute_wreath_oracle(const ProjectionSystem& ps, const FactorGroups& h);
PermGroup brute_wreath_oracle(const SkeletonBundle& b);

/// Action of a block-wise group element on the global domain: y(d) = g(x|d)(d).
/// Faithful exactly when the domain is the rebuild of its local family.
PermGroup induced_global_action(const ProjectionSystem& ps, const PermGroup& wr,
                                const GlobalDomain& g);

/// The wreath product in its global form: permutations of the domain
/// preserving every restriction congruence, by literal filter (guarded to 8
/// elements). Full symmetric coordinate factors are implied.
PermGroup global_wreath_group(const GlobalDomain& g);

/// Rewriting of a projection system into a plain local family over the same
/// skeleton; rho[d][i] is the rewritten form of parts[d][i].
struct RewriteResult {
  LocalFamily family;
  std::vector<std::vector<Seq>> rho;
};

RewriteResult rewrite_system(const ProjectionSystem& ps);

/// Checks the rewriting claims exhaustively, then verifies by conjugation
/// that the map carries the projective wreath product onto the plain one.
IsoWitness verify_rewrite(const ProjectionSystem& ps, long long max_order = 1000000);

/// Minimal partitions of every up-set into convex pieces on which the
/// projections are plain restrictions. `pieces[d]` lists the pieces for the
/// up-set of d. Throws UpSetTooLarge past the guard.
struct FiniteCharacterResult {
  bool value = true;
  std::map<int, std::vector<std::vector<int>>> pieces;
};

FiniteCharacterResult finite_character(const ProjectionSystem& ps, int upset_guard = 12);
bool has_finite_character(const ProjectionSystem& ps, int upset_guard = 12);

/// Transitivity of the (full-factor) wreath product on every local domain.
bool is_locally_homogeneous(const ProjectionSystem& ps, long long max_order = 1000000);
bool is_locally_homogeneous(const SkeletonBundle& b, long long max_order = 1000000);

/// The (x, y, d) matching condition on a global domain.
bool is_approximately_homogeneous(const GlobalDomain& g, long long max_order = 1000000);

/// Padding with fresh arity-1 levels; the returned witness certifies that
/// the wreath product is unchanged. Requires a level map.
struct PaddedSystem {
  ProjectionSystem ps;
  std::vector<int> added_blocks;
  IsoWitness witness;
};

PaddedSystem pad_top(const ProjectionSystem& ps, int k, long long max_order = 1000000);
PaddedSystem pad_bottom(const ProjectionSystem& ps, int k, long long max_order = 1000000);

/// 2^-m ultrametric on total assignments, m the first enumeration position
/// whose up-set restriction differs; 0 when equal.
Rat sequence_distance(const Skeleton& sk, const std::vector<int>& x,
                      const std::vector<int>& y, const std::vector<int>& enumeration);

/// No nontrivial level-preserving order-automorphism of the skeleton
/// preserves the arity labels.
bool is_rigid_skeleton(const Skeleton& sk);

/// Finite truncation of the tree-of-copies construction: `depth` main copies
/// of every element of the canonical poset in a descending chain, plus a
/// side chain below the tag position of every tagged block. Blocks listed in
/// `untagged` must be singletons alone at their level (machinery-added
/// padding). The witness verifies Aut*(P) against Aut of the built tree and
/// reports failure honestly if the truncation breaks the isomorphism.
struct TreeFromWreath {
  LTree tree;
  IsoWitness witness;
  std::vector<int> tag;  // block -> tag, 0 if untagged
};

TreeFromWreath tree_from_wreath(const ProjectionSystem& ps, int depth,
                                const std::set<int>& untagged = {},
                                long long max_order = 1000000);

}  // namespace umw

#endif
