#ifndef UMW_PIPELINES_HPP
#define UMW_PIPELINES_HPP

#include <map>
#include <string>
#include <vector>

#include "umw/functors.hpp"
#include "umw/skeleton.hpp"
#include "umw/ultrametric.hpp"
#include "umw/wreath.hpp"

namespace umw {

/// Node-to-sequence labeling of the part of a tree lying under an
/// upward-closed chain, produced by the counting recursion over a canonical
/// node enumeration. All three defining clauses (bijectivity onto the stated
/// target, class membership, order equivalence) are checked before the
/// result is returned.
struct LabelingResult {
  std::vector<int> nodes;        // labeled nodes, canonical order
  std::vector<Seq> labels;       // aligned with nodes
  std::vector<int> enumeration;  // base-class nodes in enumeration order
  std::map<int, long long> lambda_of;  // counting values used
};

/// chain: an upward-closed chain of tree nodes (possibly empty);
/// base_class: a condensed class strictly below every chain class;
/// boundary: prescribed values on the chain classes.
LabelingResult sequence_labeling(const LTree& t, const CondensedBundle& cb,
                                 const std::vector<int>& chain, int base_class,
                                 const std::map<int, int>& boundary);

/// Conjugation transfer along a node labeling: checks that g restricts to a
/// block-respecting order isomorphism onto the canonical poset, then
/// verifies Aut(tree) against the wreath group through it.
struct TransferResult {
  PermGroup aut;
  PermGroup wreath;
  IsoWitness witness;
};

TransferResult verify_labeling_transfer(const LTree& t, const CondensedBundle& cb,
                                        const ProjectionSystem& ps,
                                        const std::map<int, Seq>& g,
                                        long long max_order = 1000000);

struct TheoremReport {
  std::string pipeline;
  std::string verdict;  // "PASS" | "FAIL" | "DIAGNOSTIC"
  std::string detail;
  std::vector<IsoWitness> witnesses;
  std::vector<std::pair<std::string, long long>> orders;
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::pair<std::string, long long>> timings_ms;

  bool pass() const { return verdict == "PASS"; }
};

struct PipelineConfig {
  long long max_order = 1000000;
  int depth = -1;  // tree-of-copies depth; -1 means |Delta| + 2
  int wide_bound = 3;
  bool with_timings = false;
};

/// Homogeneous route: space -> canonical levels -> ball tree -> condensed
/// chain skeleton -> labeling -> wreath group, with the rebuilt sequence
/// space checked back against the original isometry group.
TheoremReport verify_homogeneous(const UltraSpace& u, const PipelineConfig& cfg = {});

/// Same route; additionally records the finite-support collapse that the
/// discrete case affords.
TheoremReport verify_discrete_homogeneous(const UltraSpace& u, const PipelineConfig& cfg = {});

/// General route: one labeling per bottom class, projections built across
/// class boundaries, finite character by the constructive partition.
TheoremReport verify_general(const UltraSpace& u, const PipelineConfig& cfg = {});
TheoremReport verify_general_tree(const LTree& t, const PipelineConfig& cfg = {});

/// Exact route: cross-class labeling under ancestor chains, producing a
/// projection-free family.
TheoremReport verify_exact(const UltraSpace& u, const PipelineConfig& cfg = {});
TheoremReport verify_exact_tree(const LTree& t, const PipelineConfig& cfg = {});

/// Wideness per distance, quasi-maximality of the condensed skeleton, and
/// the arity-1 level simplification with its conjugation witness. Throws
/// NotLinear when the skeleton is not a chain.
TheoremReport wideness_diagnostics(const UltraSpace& u, const PipelineConfig& cfg = {});

struct SimplifiedSkeleton {
  Skeleton sk;
  std::vector<int> kept;  // original block indices that survive
  IsoWitness witness;
};

SimplifiedSkeleton simplify_skeleton(const Skeleton& sk, long long max_order = 1000000);

/// Round trip through the tree of copies: pad as needed, build the truncated
/// tree, verify the wreath group against its automorphism group.
TheoremReport roundtrip_wreath(const SkeletonBundle& b, const PipelineConfig& cfg = {});

/// Internals of the general route, exposed for testing.
struct GeneralLabeling {
  CondensedBundle cb;
  std::vector<int> bottom_classes;
  std::vector<int> j_of_class;
  ProjectionSystem ps;
  std::map<int, Seq> g;
  bool projections_nontrivial = false;
};

GeneralLabeling build_general_labeling(const LTree& t, long long max_order = 1000000);

/// The sequence space of a linear skeleton: full domain under the
/// greatest-differing-level metric.
UltraSpace rebuild_sequence_space(const Skeleton& sk, const GlobalDomain& g);
std::string assignment_name(const std::vector<int>& x);

}  // namespace umw

#endif
