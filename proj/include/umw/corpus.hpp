#ifndef UMW_CORPUS_HPP
#define UMW_CORPUS_HPP

#include <cstdint>

#include "umw/ltree.hpp"
#include "umw/pipelines.hpp"
#include "umw/skeleton.hpp"
#include "umw/ultrametric.hpp"

namespace umw {

/// Deterministic generator (splitmix64). Self-contained so corpus bytes do
/// not depend on any standard-library distribution implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi], inclusive.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  uint64_t state_;
};

/// Random ultrametric space built by drawing a random leveled tree and
/// taking the join-level metric on its leaves; the strong triangle
/// inequality holds by construction.
UltraSpace random_space(Rng& rng, int max_points);

LTree random_pruned_tree(Rng& rng, int max_nodes);

/// Random projection system over a small treeable or antichain skeleton,
/// with per-cover twists composed along the (unique) chains of every up-set.
/// Retries deterministically until the sequence bound is met.
ProjectionSystem random_projection_system(Rng& rng, long long max_seqs);

struct CorpusRun {
  std::vector<UltraSpace> spaces;
  std::vector<TheoremReport> reports;
};

/// Generates spaces from the seed and runs every instance through the
/// general pipeline. Instances run in parallel; reports keep index order.
CorpusRun run_corpus(uint64_t seed, int count, int max_points,
                     const PipelineConfig& cfg = {});

}  // namespace umw

#endif
