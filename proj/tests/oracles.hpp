#ifndef UMW_TESTS_ORACLES_HPP
#define UMW_TESTS_ORACLES_HPP

// Brute-force oracles kept independent of the library's search paths: plain
// next_permutation enumeration, no pruning, no shared kernels.

#include <algorithm>
#include <vector>

#include "umw/ltree.hpp"
#include "umw/perm.hpp"
#include "umw/ultrametric.hpp"

namespace oracles {

template <typename Pred>
std::vector<umw::Perm> enumerate_filter(int n, Pred pred) {
  std::vector<umw::Perm> out;
  umw::Perm p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  do {
    if (pred(p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<umw::Perm> isometries(const umw::UltraSpace& u) {
  return enumerate_filter(u.size(), [&](const umw::Perm& p) {
    for (int x = 0; x < u.size(); ++x)
      for (int y = x + 1; y < u.size(); ++y)
        if (u.d(x, y) != u.d(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)])) return false;
    return true;
  });
}

inline std::vector<umw::Perm> tree_automorphisms(const umw::LTree& t) {
  return enumerate_filter(t.size(), [&](const umw::Perm& p) {
    for (int v = 0; v < t.size(); ++v) {
      if (t.level[static_cast<size_t>(p[static_cast<size_t>(v)])] !=
          t.level[static_cast<size_t>(v)])
        return false;
      for (int w = 0; w < t.size(); ++w)
        if (t.le(v, w) != t.le(p[static_cast<size_t>(v)], p[static_cast<size_t>(w)]))
          return false;
    }
    return true;
  });
}

}  // namespace oracles

#endif
