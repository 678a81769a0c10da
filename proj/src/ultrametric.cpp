#include "umw/ultrametric.hpp"

#include <algorithm>
#include <set>

#include "umw/error.hpp"
#include "umw/sym_filter.hpp"

namespace umw {

UltraSpace make_space(std::vector<std::string> names, std::vector<std::vector<Rat>> dist) {
  UltraSpace u{GroundSet(std::move(names)), std::move(dist)};
  if (static_cast<int>(u.dist.size()) != u.size())
    throw Error(ErrorClass::SchemaError, "distance matrix row count does not match point count");
  for (const auto& row : u.dist)
    if (static_cast<int>(row.size()) != u.size())
      throw Error(ErrorClass::SchemaError, "distance matrix is not square");
  return u;
}

ValidationReport validate_space(const UltraSpace& u) {
  ValidationReport rep;
  int n = u.size();
  for (int x = 0; x < n; ++x)
    if (u.d(x, x) != Rat(0))
      rep.violations.push_back("d(" + u.points.name(x) + "," + u.points.name(x) + ") != 0");
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (u.d(x, y) != u.d(y, x))
        rep.violations.push_back("asymmetric at (" + u.points.name(x) + "," + u.points.name(y) + ")");
      if (!(u.d(x, y) > Rat(0)))
        rep.violations.push_back("nonpositive distance at (" + u.points.name(x) + "," +
                                 u.points.name(y) + ")");
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        const Rat& xz = u.d(x, z);
        if (xz > u.d(x, y) && xz > u.d(y, z))
          rep.violations.push_back("strong triangle fails at (" + u.points.name(x) + "," +
                                   u.points.name(y) + "," + u.points.name(z) + "): " +
                                   xz.str() + " > max(" + u.d(x, y).str() + "," +
                                   u.d(y, z).str() + ")");
      }
  return rep;
}

std::vector<Rat> distance_set(const UltraSpace& u) {
  std::set<std::pair<long long, long long>> seen;
  std::vector<Rat> out;
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y) {
      const Rat& r = u.d(x, y);
      if (seen.insert({r.num(), r.den()}).second) out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ball(const UltraSpace& u, int x, const Rat& radius) {
  if (x < 0 || x >= u.size())
    throw Error(ErrorClass::UnknownPoint, "ball center out of range");
  if (!(radius > Rat(0)))
    throw Error(ErrorClass::InvalidInput, "ball radius must be positive");
  std::vector<int> out;
  for (int y = 0; y < u.size(); ++y)
    if (u.d(x, y) < radius) out.push_back(y);
  return out;
}

std::vector<int> ball(const UltraSpace& u, const std::string& x, const Rat& radius) {
  if (!u.points.contains(x))
    throw Error(ErrorClass::UnknownPoint, "no point '" + x + "'");
  return ball(u, u.points.index(x), radius);
}

namespace {

bool preserves_distances(const UltraSpace& u, const Perm& p) {
  int n = u.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (u.d(x, y) != u.d(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)])) return false;
  return true;
}

// Backtracking over point images, pruning on the per-point multiset of
// distances (preserved by any isometry).
void iso_backtrack(const UltraSpace& u, const std::vector<std::vector<Rat>>& profile,
                   Perm& partial, std::vector<bool>& used, int depth,
                   std::vector<Perm>& out, long long max_order) {
  int n = u.size();
  if (depth == n) {
    out.push_back(partial);
    if (static_cast<long long>(out.size()) > max_order)
      throw Error(ErrorClass::OrderGuardExceeded,
                  "isometry group exceeds max_order " + std::to_string(max_order));
    return;
  }
  for (int img = 0; img < n; ++img) {
    if (used[static_cast<size_t>(img)]) continue;
    if (profile[static_cast<size_t>(depth)] != profile[static_cast<size_t>(img)]) continue;
    bool ok = true;
    for (int j = 0; j < depth && ok; ++j)
      if (u.d(depth, j) != u.d(img, partial[static_cast<size_t>(j)])) ok = false;
    if (!ok) continue;
    partial[static_cast<size_t>(depth)] = img;
    used[static_cast<size_t>(img)] = true;
    iso_backtrack(u, profile, partial, used, depth + 1, out, max_order);
    used[static_cast<size_t>(img)] = false;
  }
}

}  // namespace

PermGroup iso_group_brute(const UltraSpace& u) {
  auto elems = filter_sym(u.size(), [&](const Perm& p) { return preserves_distances(u, p); });
  return PermGroup{u.points, std::move(elems), {}};
}

PermGroup iso_group(const UltraSpace& u, long long max_order) {
  int n = u.size();
  std::vector<std::vector<Rat>> profile(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (y != x) profile[static_cast<size_t>(x)].push_back(u.d(x, y));
    std::sort(profile[static_cast<size_t>(x)].begin(), profile[static_cast<size_t>(x)].end());
  }
  std::vector<Perm> elems;
  Perm partial(static_cast<size_t>(n), -1);
  std::vector<bool> used(static_cast<size_t>(n), false);
  iso_backtrack(u, profile, partial, used, 0, elems, max_order);
  std::sort(elems.begin(), elems.end());
  PermGroup g{u.points, std::move(elems), {}};

  // Post-search re-check: every claimed isometry really preserves distances,
  // and for small spaces the search agrees with the plain filter.
  for (const Perm& p : g.elements)
    if (!preserves_distances(u, p))
      throw Error(ErrorClass::InvalidInput, "internal: search produced a non-isometry");
  if (n <= 6) {
    PermGroup brute = iso_group_brute(u);
    if (brute.elements != g.elements)
      throw Error(ErrorClass::InvalidInput, "internal: pruned search disagrees with brute filter");
  }
  return g;
}

std::vector<std::vector<int>> components(const UltraSpace& u) {
  return orbits(iso_group(u));
}

bool is_homogeneous(const UltraSpace& u) { return components(u).size() == 1; }

ComponentPair component_distance(const UltraSpace& u, const std::vector<int>& a,
                                 const std::vector<int>& b) {
  auto comps = components(u);
  auto is_component = [&](const std::vector<int>& c) {
    return std::find(comps.begin(), comps.end(), c) != comps.end();
  };
  if (!is_component(a) || !is_component(b) || a == b)
    throw Error(ErrorClass::NotAComponent, "arguments must be two distinct Iso-orbits");
  ComponentPair out{a, b, Rat(0), {-1, -1}};
  bool first = true;
  for (int x : a)
    for (int y : b) {
      const Rat& d = u.d(x, y);
      if (first || d < out.distance) {
        out.distance = d;
        out.witness = {x, y};
        first = false;
      }
    }
  return out;
}

bool is_exact(const UltraSpace& u) {
  auto comps = components(u);
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j) {
      ComponentPair cp = component_distance(u, comps[i], comps[j]);
      // the minimum over a finite set is attained by its witness
      if (u.d(cp.witness.first, cp.witness.second) != cp.distance) return false;
    }
  return true;
}

bool is_r_discrete(const UltraSpace& u, const Rat& r) {
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y)
      if (u.d(x, y) != r) return false;
  return true;
}

int max_r_discrete_subset(const UltraSpace& u, const Rat& r) {
  // exact search over subsets; point counts here are <= 7
  int n = u.size();
  if (n > 20) throw Error(ErrorClass::TooLarge, "r-discrete search on too many points");
  int best = n > 0 ? 1 : 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> pts;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) pts.push_back(i);
    if (static_cast<int>(pts.size()) <= best) continue;
    bool ok = true;
    for (size_t i = 0; i < pts.size() && ok; ++i)
      for (size_t j = i + 1; j < pts.size() && ok; ++j)
        if (u.d(pts[i], pts[j]) != r) ok = false;
    if (ok) best = static_cast<int>(pts.size());
  }
  return best;
}

std::map<Rat, bool> wideness_profile(const UltraSpace& u, int m) {
  std::map<Rat, bool> out;
  for (const Rat& r : distance_set(u)) out[r] = max_r_discrete_subset(u, r) >= m;
  return out;
}

}  // namespace umw
