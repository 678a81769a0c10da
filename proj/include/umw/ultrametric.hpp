#ifndef UMW_ULTRAMETRIC_HPP
#define UMW_ULTRAMETRIC_HPP

#include <map>
#include <utility>
#include <vector>

#include "umw/ground.hpp"
#include "umw/perm.hpp"
#include "umw/rational.hpp"

namespace umw {

/// Finite ultrametric space with exact rational distances.
struct UltraSpace {
  GroundSet points;
  std::vector<std::vector<Rat>> dist;  // symmetric, zero diagonal

  const Rat& d(int x, int y) const { return dist[static_cast<size_t>(x)][static_cast<size_t>(y)]; }
  int size() const { return points.size(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the metric and strong-triangle axioms, reporting every violation
/// with the offending pair or triple.
ValidationReport validate_space(const UltraSpace& u);

/// Distinct nonzero distances, ascending.
std::vector<Rat> distance_set(const UltraSpace& u);

/// Open ball { y : d(x,y) < radius }, indices ascending. radius must be > 0.
std::vector<int> ball(const UltraSpace& u, int x, const Rat& radius);
std::vector<int> ball(const UltraSpace& u, const std::string& x, const Rat& radius);

/// Full isometry group, by backtracking with distance-profile pruning. For
/// spaces with at most 6 points the result is cross-checked against the
/// plain Sym(n) filter.
PermGroup iso_group(const UltraSpace& u, long long max_order = 1000000);

/// Isometry group by exhaustive filter over Sym(n); reference oracle.
PermGroup iso_group_brute(const UltraSpace& u);

/// Iso-orbits of the point set (homogeneous components).
std::vector<std::vector<int>> components(const UltraSpace& u);
bool is_homogeneous(const UltraSpace& u);

/// Minimum cross distance between two distinct components, with a realizing
/// pair of points.
struct ComponentPair {
  std::vector<int> comp_a;
  std::vector<int> comp_b;
  Rat distance;
  std::pair<int, int> witness;
};

ComponentPair component_distance(const UltraSpace& u, const std::vector<int>& a,
                                 const std::vector<int>& b);

/// Literal check that every pair of distinct components realizes its minimum
/// distance. Always true on finite spaces; the predicate is computed, not
/// assumed.
bool is_exact(const UltraSpace& u);

/// Whether the whole space is r-discrete (all pairwise distances equal r).
bool is_r_discrete(const UltraSpace& u, const Rat& r);

/// For each distance r, whether the space contains an r-discrete subset of
/// size >= m (exact maximum-clique search in the r-equidistance graph).
std::map<Rat, bool> wideness_profile(const UltraSpace& u, int m);

/// Size of the largest r-discrete subset.
int max_r_discrete_subset(const UltraSpace& u, const Rat& r);

/// Convenience constructor from names and a rational matrix.
UltraSpace make_space(std::vector<std::string> names, std::vector<std::vector<Rat>> dist);

}  // namespace umw

#endif
