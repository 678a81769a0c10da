// Compares the serial reference kernel with the OpenMP kernel on the
// exhaustive permutation filters that dominate the oracle runtimes.

#include <chrono>
#include <cstdio>

#include "umw/corpus.hpp"
#include "umw/functors.hpp"
#include "umw/sym_filter.hpp"
#include "umw/ultrametric.hpp"

using namespace umw;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void bench_case(const char* name, const UltraSpace& u) {
  auto pred = [&](const Perm& p) {
    int n = u.size();
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (u.d(x, y) != u.d(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)])) return false;
    return true;
  };

  auto t0 = std::chrono::steady_clock::now();
  auto serial = filter_sym_serial(u.size(), pred);
  double serial_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto parallel = filter_sym_parallel(u.size(), pred);
  double parallel_ms = ms_since(t0);

  bool equal = serial == parallel;
  std::printf("%-28s n=%2d hits=%6zu serial=%9.1f ms omp=%9.1f ms speedup=%5.2fx %s\n", name,
              u.size(), serial.size(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("permutation filter kernels: serial reference vs OpenMP\n\n");

  // the worked 4-point space with two 2-point clusters
  UltraSpace u1 = make_space(
      {"a", "b", "c", "d"},
      {{Rat(0), Rat(1), Rat(2), Rat(2)},
       {Rat(1), Rat(0), Rat(2), Rat(2)},
       {Rat(2), Rat(2), Rat(0), Rat(1)},
       {Rat(2), Rat(2), Rat(1), Rat(0)}});

  RigidComb comb = rigid_comb(1, default_radii(1, Rat(1)));
  bench_case("cluster space x comb", comb_product(u1, comb));

  Rng rng(7);
  // two random 9- and 10-point corpus-style spaces (force exact sizes)
  for (int target : {9, 10}) {
    UltraSpace u = random_space(rng, 7);
    while (u.size() != 7) u = random_space(rng, 7);
    // widen to `target` points by cloning the cluster structure at a new level
    std::vector<std::string> names = u.points.names();
    int extra = target - u.size();
    std::vector<std::vector<Rat>> m(static_cast<size_t>(target),
                                    std::vector<Rat>(static_cast<size_t>(target), Rat(0)));
    for (int x = 0; x < u.size(); ++x)
      for (int y = 0; y < u.size(); ++y) m[static_cast<size_t>(x)][static_cast<size_t>(y)] = u.d(x, y);
    for (int e = 0; e < extra; ++e) {
      int idx = u.size() + e;
      names.push_back("q" + std::to_string(e));
      for (int x = 0; x < idx; ++x) {
        m[static_cast<size_t>(idx)][static_cast<size_t>(x)] = Rat(100);
        m[static_cast<size_t>(x)][static_cast<size_t>(idx)] = Rat(100);
      }
      for (int f = 0; f < e; ++f) {
        m[static_cast<size_t>(u.size() + f)][static_cast<size_t>(idx)] = Rat(50);
        m[static_cast<size_t>(idx)][static_cast<size_t>(u.size() + f)] = Rat(50);
      }
    }
    UltraSpace wide = make_space(names, m);
    bench_case(target == 9 ? "random space, 9 points" : "random space, 10 points", wide);
  }
  return 0;
}
