#ifndef UMW_PERM_HPP
#define UMW_PERM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "umw/ground.hpp"

namespace umw {

/// A permutation is a bijection of {0..n-1}, acting on the indices of some
/// ground set: perm[i] = j means element i maps to element j.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& f, const Perm& g);  // (f ∘ g)(x) = f(g(x))
Perm inverse(const Perm& f);
bool is_permutation(const Perm& f);
std::string perm_str(const GroundSet& ground, const Perm& p);  // one-line notation

/// Explicit finite permutation group: the identity plus every element,
/// closed under composition and inverse. Elements are kept sorted so all
/// downstream output is deterministic.
struct PermGroup {
  GroundSet ground;
  std::vector<Perm> elements;    // sorted lexicographically, contains identity
  std::vector<Perm> generators;  // optional; empty means "not presented"

  long long order() const { return static_cast<long long>(elements.size()); }
  bool contains(const Perm& p) const;
};

/// Builds a group from a sorted-unique element list (identity added if missing).
PermGroup make_group(GroundSet ground, std::vector<Perm> elements,
                     std::vector<Perm> generators = {});

PermGroup trivial_group(GroundSet ground);
PermGroup symmetric_group(GroundSet ground, long long max_order);

/// Breadth-first product closure of the generators. Throws DomainMismatch if
/// the generators live on different ground sets and OrderGuardExceeded if the
/// closure grows past max_order.
PermGroup closure(const GroundSet& ground, const std::vector<Perm>& generators,
                  long long max_order);

/// Orbit partition; blocks sorted by least element, elements ascending.
std::vector<std::vector<int>> orbits(const PermGroup& g);

/// True iff `block` is a single orbit of the restricted action. The block
/// must be nonempty and G-invariant (NotInvariant otherwise).
bool is_transitive(const PermGroup& g, const std::vector<int>& block);
bool is_transitive(const PermGroup& g);  // whole ground set

/// Subgroup of elements fixing x (an index into the ground set).
PermGroup stabilizer(const PermGroup& g, int x);
PermGroup stabilizer(const PermGroup& g, const std::string& name);

/// Verification record for an explicit group isomorphism. `verified` is true
/// iff the claimed map carries the source group bijectively onto the target;
/// on failure, `failure` names the first offending element.
struct IsoWitness {
  std::string label;
  long long source_order = 0;
  long long target_order = 0;
  bool verified = false;
  std::string failure;
};

/// Checks that conjugation by `bij` (source index -> target index) maps G
/// bijectively onto H. Failure is data, not an error.
IsoWitness verify_conjugation(const PermGroup& g, const PermGroup& h,
                              const std::vector<int>& bij,
                              const std::string& label = "conjugation");

/// Checks that `lift` is an injective homomorphism from G onto H. Used when
/// the two groups act on different ground sets (functorial images, paddings).
IsoWitness verify_homomorphic_image(const PermGroup& g, const PermGroup& h,
                                    const std::function<Perm(const Perm&)>& lift,
                                    const std::string& label = "lift");

}  // namespace umw

#endif
