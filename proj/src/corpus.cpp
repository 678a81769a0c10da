#include "umw/corpus.hpp"

#include <algorithm>

#include "umw/error.hpp"

namespace umw {

namespace {

// leveled tree widths, one row per level from the top down; every node gets
// at least one child so the bottom row is the widest
std::vector<std::vector<int>> grow_children(Rng& rng, int rows, int width_cap, int fanout) {
  std::vector<std::vector<int>> children_per_row;
  int parents = 1;
  for (int r = 0; r < rows; ++r) {
    std::vector<int> counts;
    int made = 0;
    for (int p = 0; p < parents; ++p) {
      int room = width_cap - made - (parents - p - 1);
      int c = rng.uniform(1, std::max(1, std::min(fanout, room)));
      counts.push_back(c);
      made += c;
    }
    children_per_row.push_back(counts);
    parents = made;
  }
  return children_per_row;
}

}  // namespace

UltraSpace random_space(Rng& rng, int max_points) {
  if (max_points < 1 || max_points > 7)
    throw Error(ErrorClass::InvalidInput, "corpus spaces are capped at 7 points");
  int depth = rng.uniform(1, 3);
  std::vector<Rat> level_values;
  long long v = rng.uniform(1, 3);
  for (int i = 0; i < depth; ++i) {
    level_values.push_back(Rat(v));
    v += rng.uniform(1, 3);
  }
  // ancestry rows: row r holds the parent index (into row r-1) of each node
  auto kids = grow_children(rng, depth, max_points, 3);
  std::vector<std::vector<int>> parent_rows;  // per row, parent position
  for (int r = 0; r < depth; ++r) {
    std::vector<int> parents;
    for (size_t p = 0; p < kids[static_cast<size_t>(r)].size(); ++p)
      for (int c = 0; c < kids[static_cast<size_t>(r)][p]; ++c)
        parents.push_back(static_cast<int>(p));
    parent_rows.push_back(std::move(parents));
  }
  int n = static_cast<int>(parent_rows.back().size());
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));

  // join level of two leaves: first row (from the bottom) where ancestors meet
  auto dist = [&](int x, int y) {
    int ax = x, ay = y;
    for (int r = depth - 1; r >= 0; --r) {
      ax = parent_rows[static_cast<size_t>(r)][static_cast<size_t>(ax)];
      ay = parent_rows[static_cast<size_t>(r)][static_cast<size_t>(ay)];
      if (ax == ay) return level_values[static_cast<size_t>(depth - 1 - r)];
    }
    throw Error(ErrorClass::InvalidInput, "internal: leaves never join");
  };
  std::vector<std::vector<Rat>> matrix(static_cast<size_t>(n),
                                       std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) matrix[static_cast<size_t>(x)][static_cast<size_t>(y)] = dist(x, y);
  UltraSpace u = make_space(std::move(names), std::move(matrix));
  ValidationReport rep = validate_space(u);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidInput, "internal: corpus space invalid: " + rep.violations.front());
  return u;
}

LTree random_pruned_tree(Rng& rng, int max_nodes) {
  if (max_nodes < 1) throw Error(ErrorClass::InvalidInput, "empty tree requested");
  int depth = rng.uniform(0, 2);
  // keep the node total within the cap: a tree of `depth` child rows with
  // row widths w_r needs sum(w_r) + 1 nodes
  int budget_per_row = std::max(1, (max_nodes - 1) / std::max(1, depth));
  auto kids = depth > 0 ? grow_children(rng, depth, budget_per_row, 2)
                        : std::vector<std::vector<int>>{};

  std::vector<Rat> labels;
  for (int i = 0; i <= depth; ++i) labels.push_back(Rat(i + 1));

  std::vector<std::string> names{"n0"};
  std::vector<int> level{depth};
  std::vector<int> parent{-1};
  std::vector<int> prev_row{0};
  for (int r = 0; r < depth; ++r) {
    std::vector<int> row;
    for (size_t p = 0; p < kids[static_cast<size_t>(r)].size(); ++p)
      for (int c = 0; c < kids[static_cast<size_t>(r)][p]; ++c) {
        int idx = static_cast<int>(names.size());
        names.push_back("n" + std::to_string(idx));
        level.push_back(depth - 1 - r);
        parent.push_back(prev_row[p]);
        row.push_back(idx);
      }
    prev_row = std::move(row);
  }
  return make_ltree(make_order(std::move(labels)), GroundSet(std::move(names)),
                    std::move(level), std::move(parent));
}

ProjectionSystem random_projection_system(Rng& rng, long long max_seqs) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    int shape = rng.uniform(0, 6);
    Skeleton sk;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Rat> levels;
    bool leveled = true;
    int blocks = 0;
    switch (shape) {
      case 0: blocks = 2; break;   // chain
      case 1: blocks = 3; break;   // chain
      case 2: blocks = 4; break;   // chain
      case 3: blocks = 3; break;   // two leaves below a root
      case 4: blocks = 2; leveled = false; break;  // antichain
      case 5: blocks = 3; leveled = false; break;  // antichain
      case 6: blocks = 3; leveled = false; break;  // chain plus isolated point
      default: blocks = 2;
    }
    for (int i = 0; i < blocks; ++i) names.push_back("d" + std::to_string(i + 1));
    if (shape <= 2) {
      for (int i = 0; i + 1 < blocks; ++i) pairs.emplace_back(i, i + 1);
      for (int i = 0; i < blocks; ++i) levels.push_back(Rat(i + 1));
    } else if (shape == 3) {
      pairs.emplace_back(0, 2);
      pairs.emplace_back(1, 2);
      levels = {Rat(1), Rat(1), Rat(2)};
    } else if (shape == 6) {
      pairs.emplace_back(0, 1);
    }
    sk.delta = make_poset(GroundSet(names), pairs);
    for (int i = 0; i < blocks; ++i) sk.N.push_back(rng.uniform(1, 3));
    if (leveled) sk.level = levels;

    long long total = 0;
    for (int d = 0; d < blocks; ++d) {
      long long prod = 1;
      for (int g : sk.delta.up_set(d)) prod *= sk.N[static_cast<size_t>(g)];
      total += prod;
    }
    if (total > max_seqs) continue;

    ProjectionSystem ps = trivial_system(full_local_family(sk));
    // twist the covering projections, then recompose the longer ones
    auto covers = [&](int d, int g) {
      if (!sk.delta.lt(d, g)) return false;
      for (int m = 0; m < blocks; ++m)
        if (m != d && m != g && sk.delta.lt(d, m) && sk.delta.lt(m, g)) return false;
      return true;
    };
    for (int d = 0; d < blocks; ++d)
      for (int g = 0; g < blocks; ++g) {
        if (!covers(d, g)) continue;
        if (rng.uniform(0, 1) == 0) continue;  // leave some restrictions in place
        int m = static_cast<int>(ps.parts[static_cast<size_t>(g)].size());
        std::vector<int> sigma(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) sigma[static_cast<size_t>(i)] = i;
        for (int i = m - 1; i > 0; --i)
          std::swap(sigma[static_cast<size_t>(i)], sigma[static_cast<size_t>(rng.uniform(0, i))]);
        for (int& target : ps.pi[{d, g}]) target = sigma[static_cast<size_t>(target)];
      }
    for (int d = 0; d < blocks; ++d)
      for (int g = 0; g < blocks; ++g) {
        if (!sk.delta.lt(d, g) || covers(d, g)) continue;
        for (int m = 0; m < blocks; ++m) {
          if (!covers(d, m) || !sk.delta.le(m, g)) continue;
          std::vector<int> table;
          for (size_t zi = 0; zi < ps.parts[static_cast<size_t>(d)].size(); ++zi)
            table.push_back(
                ps.project_index(m, g, ps.project_index(d, m, static_cast<int>(zi))));
          ps.pi[{d, g}] = std::move(table);
          break;
        }
      }
    ValidationReport rep = validate_projection_system(ps);
    if (!rep.ok())
      throw Error(ErrorClass::InvalidInput,
                  "internal: random system invalid: " + rep.violations.front());
    return ps;
  }
  throw Error(ErrorClass::InvalidInput, "could not meet the sequence bound");
}

CorpusRun run_corpus(uint64_t seed, int count, int max_points, const PipelineConfig& cfg) {
  if (count < 0) throw Error(ErrorClass::InvalidInput, "negative corpus count");
  if (max_points > 7)
    throw Error(ErrorClass::InvalidInput, "corpus point bound exceeds the oracle budget");
  CorpusRun out;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) out.spaces.push_back(random_space(rng, max_points));
  out.reports.resize(out.spaces.size());

#ifdef UMW_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < static_cast<int>(out.spaces.size()); ++i) {
    try {
      out.reports[static_cast<size_t>(i)] = verify_general(out.spaces[static_cast<size_t>(i)], cfg);
    } catch (const std::exception& e) {
      TheoremReport rep;
      rep.pipeline = "general";
      rep.verdict = "FAIL";
      rep.detail = e.what();
      out.reports[static_cast<size_t>(i)] = std::move(rep);
    }
  }
  return out;
}

}  // namespace umw
