#ifndef UMW_TESTS_FIXTURES_HPP
#define UMW_TESTS_FIXTURES_HPP

#include "umw/skeleton.hpp"
#include "umw/ultrametric.hpp"

namespace fixtures {

using namespace umw;

// four points in two clusters: d(a,b) = d(c,d) = 1, everything across = 2
inline UltraSpace u1() {
  return make_space({"a", "b", "c", "d"},
                    {{Rat(0), Rat(1), Rat(2), Rat(2)},
                     {Rat(1), Rat(0), Rat(2), Rat(2)},
                     {Rat(2), Rat(2), Rat(0), Rat(1)},
                     {Rat(2), Rat(2), Rat(1), Rat(0)}});
}

// a pair at distance 1 plus an outlier at distance 2
inline UltraSpace u2() {
  return make_space({"a", "b", "c"},
                    {{Rat(0), Rat(1), Rat(2)},
                     {Rat(1), Rat(0), Rat(2)},
                     {Rat(2), Rat(2), Rat(0)}});
}

inline UltraSpace one_point() { return make_space({"a"}, {{Rat(0)}}); }

inline UltraSpace two_points() {
  return make_space({"x", "y"}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
}

inline Skeleton chain_skeleton(const std::vector<long long>& arity) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Rat> levels;
  for (size_t i = 0; i < arity.size(); ++i) {
    names.push_back("d" + std::to_string(i + 1));
    if (i + 1 < arity.size()) pairs.emplace_back(static_cast<int>(i), static_cast<int>(i) + 1);
    levels.push_back(Rat(static_cast<long long>(i) + 1));
  }
  Skeleton sk;
  sk.delta = make_poset(GroundSet(names), pairs);
  sk.N = arity;
  sk.level = levels;
  return sk;
}

inline Skeleton antichain_skeleton(const std::vector<long long>& arity) {
  std::vector<std::string> names;
  for (size_t i = 0; i < arity.size(); ++i) names.push_back("d" + std::to_string(i + 1));
  Skeleton sk;
  sk.delta = make_poset(GroundSet(names), {});
  sk.N = arity;
  return sk;
}

// two leaves below one root
inline Skeleton cherry_skeleton(long long n1, long long n2, long long ntop) {
  Skeleton sk;
  sk.delta = make_poset(GroundSet({"d1", "d2", "d3"}), {{0, 2}, {1, 2}});
  sk.N = {n1, n2, ntop};
  sk.level = std::vector<Rat>{Rat(1), Rat(1), Rat(2)};
  return sk;
}

// the twisted two-level system: arity (1,2), projection flipping the top bit
inline ProjectionSystem w3_twist() {
  Skeleton sk = chain_skeleton({1, 2});
  ProjectionSystem ps = trivial_system(full_local_family(sk));
  // parts of d1, sorted: (0,0), (0,1); restriction sends index j to (j);
  // the twist sends it to (1-j)
  ps.pi[{0, 1}] = {1, 0};
  return ps;
}

inline ProjectionSystem chain22_system() {
  return trivial_system(full_local_family(chain_skeleton({2, 2})));
}

inline ProjectionSystem trivial_system_fixture() {
  return trivial_system(full_local_family(chain_skeleton({1})));
}

}  // namespace fixtures

#endif
