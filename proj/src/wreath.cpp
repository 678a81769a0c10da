#include "umw/wreath.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "umw/error.hpp"
#include "umw/sym_filter.hpp"

namespace umw {

namespace {

GroundSet value_ground(long long n) {
  std::vector<std::string> names;
  for (long long i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return GroundSet(std::move(names));
}

void require_valid(const ProjectionSystem& ps) {
  ValidationReport rep = validate_projection_system(ps);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidSystem, "projection system invalid: " + rep.violations.front());
}

void require_transitive(const Skeleton& sk, const FactorGroups& h) {
  if (static_cast<int>(h.size()) != sk.size())
    throw Error(ErrorClass::InvalidInput, "one factor group per skeleton element required");
  for (int d = 0; d < sk.size(); ++d) {
    if (h[static_cast<size_t>(d)].ground.size() != sk.N[static_cast<size_t>(d)])
      throw Error(ErrorClass::InvalidInput, "factor group degree mismatch at " +
                                                sk.delta.elems.name(d));
    if (!is_transitive(h[static_cast<size_t>(d)]))
      throw Error(ErrorClass::NotTransitive,
                  "factor group at " + sk.delta.elems.name(d) + " is not transitive");
  }
}

bool factors_full(const Skeleton& sk, const FactorGroups& h) {
  for (int d = 0; d < sk.size(); ++d) {
    long long n = sk.N[static_cast<size_t>(d)];
    long long fact = 1;
    for (long long i = 2; i <= n; ++i) fact *= i;
    if (h[static_cast<size_t>(d)].order() != fact) return false;
  }
  return true;
}

// Coordinate action of g at block d, read off from the perturbations of z.
Perm coordinate_action(const ProjectionSystem& ps, const CanonicalPoset& cp, const Perm& g,
                       int d, int zi) {
  const Seq& z = ps.parts[static_cast<size_t>(d)][static_cast<size_t>(zi)];
  long long n = ps.sk.N[static_cast<size_t>(d)];
  Perm action;
  for (long long i = 0; i < n; ++i) {
    Seq p = seq_perturb(ps.sk, z, static_cast<int>(i));
    int pe = cp.entry_of(d, ps.seq_index(d, p));
    int image_entry = g[static_cast<size_t>(pe)];
    const Seq& img = ps.parts[static_cast<size_t>(d)]
                             [static_cast<size_t>(cp.entries[static_cast<size_t>(image_entry)].second)];
    action.push_back(seq_value(ps.sk, img, d));
  }
  return action;
}

// (P1) + (P2) for an explicit permutation of the union of local domains.
bool satisfies_wreath_conditions(const ProjectionSystem& ps, const CanonicalPoset& cp,
                                 const FactorGroups* h, const Perm& g) {
  int n = static_cast<int>(cp.entries.size());
  for (int e = 0; e < n; ++e)
    if (cp.entries[static_cast<size_t>(g[static_cast<size_t>(e)])].first !=
        cp.entries[static_cast<size_t>(e)].first)
      return false;
  for (int e = 0; e < n; ++e) {
    auto [d, zi] = cp.entries[static_cast<size_t>(e)];
    for (int gamma = 0; gamma < ps.sk.size(); ++gamma) {
      if (!ps.sk.delta.le(d, gamma)) continue;
      int proj_entry = cp.entry_of(gamma, ps.project_index(d, gamma, zi));
      int img_proj = g[static_cast<size_t>(proj_entry)];
      auto [gd, gzi] = cp.entries[static_cast<size_t>(g[static_cast<size_t>(e)])];
      int proj_of_img = cp.entry_of(gamma, ps.project_index(gd, gamma, gzi));
      if (img_proj != proj_of_img) return false;
    }
  }
  for (int d = 0; d < ps.sk.size(); ++d)
    for (int zi = 0; zi < static_cast<int>(ps.parts[static_cast<size_t>(d)].size()); ++zi) {
      Perm action = coordinate_action(ps, cp, g, d, zi);
      if (!is_permutation(action)) return false;
      if (h && !(*h)[static_cast<size_t>(d)].contains(action)) return false;
    }
  return true;
}

struct EntrySignature {
  int block;
  std::vector<int> up_counts;    // per target block: size of up-image fibers
  std::vector<int> down_counts;  // per source block: how many project onto this
};

std::vector<EntrySignature> entry_signatures(const ProjectionSystem& ps,
                                             const CanonicalPoset& cp) {
  int n = static_cast<int>(cp.entries.size());
  std::vector<EntrySignature> sig(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    auto [d, zi] = cp.entries[static_cast<size_t>(e)];
    sig[static_cast<size_t>(e)].block = d;
    sig[static_cast<size_t>(e)].up_counts.assign(static_cast<size_t>(ps.sk.size()), -1);
    sig[static_cast<size_t>(e)].down_counts.assign(static_cast<size_t>(ps.sk.size()), 0);
    for (int gamma = 0; gamma < ps.sk.size(); ++gamma)
      if (ps.sk.delta.le(d, gamma))
        sig[static_cast<size_t>(e)].up_counts[static_cast<size_t>(gamma)] =
            ps.project_index(d, gamma, zi);
  }
  // fiber sizes: how many sequences of each lower block project onto e
  for (int e = 0; e < n; ++e) {
    auto [d, zi] = cp.entries[static_cast<size_t>(e)];
    for (int below = 0; below < ps.sk.size(); ++below) {
      if (!ps.sk.delta.le(below, d)) continue;
      int count = 0;
      for (int wi = 0; wi < static_cast<int>(ps.parts[static_cast<size_t>(below)].size()); ++wi)
        if (ps.project_index(below, d, wi) == zi) ++count;
      sig[static_cast<size_t>(e)].down_counts[static_cast<size_t>(below)] = count;
    }
  }
  // up_counts holds raw indices (not invariants); replace by fiber-size of
  // own image chain, which is invariant under localized automorphisms
  for (int e = 0; e < n; ++e) sig[static_cast<size_t>(e)].up_counts.clear();
  return sig;
}

void wreath_backtrack(const ProjectionSystem& ps, const CanonicalPoset& cp,
                      const std::vector<EntrySignature>& sig, Perm& partial,
                      std::vector<bool>& used, int pos, std::vector<Perm>& out,
                      long long max_order) {
  int n = static_cast<int>(cp.entries.size());
  if (pos == n) {
    out.push_back(partial);
    if (static_cast<long long>(out.size()) > max_order)
      throw Error(ErrorClass::OrderGuardExceeded,
                  "wreath group exceeds max_order " + std::to_string(max_order));
    return;
  }
  for (int img = 0; img < n; ++img) {
    if (used[static_cast<size_t>(img)]) continue;
    if (sig[static_cast<size_t>(img)].block != sig[static_cast<size_t>(pos)].block) continue;
    if (sig[static_cast<size_t>(img)].down_counts != sig[static_cast<size_t>(pos)].down_counts)
      continue;
    bool ok = true;
    for (int prev = 0; prev < pos && ok; ++prev) {
      bool fwd = cp.poset.le(prev, pos);
      bool bwd = cp.poset.le(pos, prev);
      if (fwd != cp.poset.le(partial[static_cast<size_t>(prev)], img)) ok = false;
      if (bwd != cp.poset.le(img, partial[static_cast<size_t>(prev)])) ok = false;
    }
    if (!ok) continue;
    partial[static_cast<size_t>(pos)] = img;
    used[static_cast<size_t>(img)] = true;
    wreath_backtrack(ps, cp, sig, partial, used, pos + 1, out, max_order);
    used[static_cast<size_t>(img)] = false;
  }
}

}  // namespace

FactorGroups full_factors(const Skeleton& sk, long long max_order) {
  FactorGroups h;
  for (int d = 0; d < sk.size(); ++d)
    h.push_back(symmetric_group(value_ground(sk.N[static_cast<size_t>(d)]), max_order));
  return h;
}

PermGroup wreath_group(const ProjectionSystem& ps, const FactorGroups& h,
                       long long max_order) {
  require_valid(ps);
  require_transitive(ps.sk, h);
  CanonicalPoset cp = canonical_poset(ps);
  bool full = factors_full(ps.sk, h);

  std::vector<EntrySignature> sig = entry_signatures(ps, cp);
  std::vector<Perm> candidates;
  Perm partial(cp.entries.size(), -1);
  std::vector<bool> used(cp.entries.size(), false);
  wreath_backtrack(ps, cp, sig, partial, used, 0, candidates, max_order);

  std::vector<Perm> elems;
  for (const Perm& g : candidates) {
    if (!full) {
      if (!satisfies_wreath_conditions(ps, cp, &h, g)) continue;
    } else {
      // coordinate condition drops for full factors; the permutation property
      // of every coordinate action is still re-checked
      if (!satisfies_wreath_conditions(ps, cp, nullptr, g))
        throw Error(ErrorClass::InvalidInput,
                    "internal: poset automorphism violates the wreath conditions");
    }
    elems.push_back(g);
  }
  std::sort(elems.begin(), elems.end());
  return PermGroup{cp.ground, std::move(elems), {}};
}

PermGroup wreath_group_full(const ProjectionSystem& ps, long long max_order) {
  return wreath_group(ps, full_factors(ps.sk, max_order), max_order);
}

PermGroup wreath_group(const SkeletonBundle& b, long long max_order) {
  return wreath_group_full(to_system(b), max_order);
}

PermGroup brute_wreath_oracle(const ProjectionSystem& ps, const FactorGroups& h) {
  require_valid(ps);
  require_transitive(ps.sk, h);
  if (ps.total_seqs() > 8)
    throw Error(ErrorClass::TooLarge,
                "oracle guard: " + std::to_string(ps.total_seqs()) + " sequences");
  CanonicalPoset cp = canonical_poset(ps);
  auto elems = filter_sym(static_cast<int>(cp.entries.size()), [&](const Perm& g) {
    return satisfies_wreath_conditions(ps, cp, &h, g);
  });
  return PermGroup{cp.ground, std::move(elems), {}};
}

PermGroup brute_wreath_oracle(const SkeletonBundle& b) {
  ProjectionSystem ps = to_system(b);
  return brute_wreath_oracle(ps, full_factors(ps.sk));
}

PermGroup induced_global_action(const ProjectionSystem& ps, const PermGroup& wr,
                                const GlobalDomain& g) {
  CanonicalPoset cp = canonical_poset(ps);
  std::vector<std::string> names;
  for (const auto& x : g.elems) {
    std::string s;
    for (size_t i = 0; i < x.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(x[i]);
    }
    names.push_back(s);
  }
  GroundSet ground(names);

  std::vector<Perm> elems;
  for (const Perm& w : wr.elements) {
    Perm p;
    for (const auto& x : g.elems) {
      std::vector<int> y(x.size());
      for (int d = 0; d < g.sk.size(); ++d) {
        Seq restr;
        restr.base = d;
        for (int up : g.sk.delta.up_set(d)) restr.vals.push_back(x[static_cast<size_t>(up)]);
        int e = cp.entry_of(d, ps.seq_index(d, restr));
        const Seq& img =
            ps.parts[static_cast<size_t>(d)]
                    [static_cast<size_t>(cp.entries[static_cast<size_t>(w[static_cast<size_t>(e)])].second)];
        y[static_cast<size_t>(d)] = seq_value(ps.sk, img, d);
      }
      auto it = std::lower_bound(g.elems.begin(), g.elems.end(), y);
      if (it == g.elems.end() || *it != y)
        throw Error(ErrorClass::InvalidInput,
                    "internal: induced image leaves the global domain");
      p.push_back(static_cast<int>(it - g.elems.begin()));
    }
    if (!is_permutation(p))
      throw Error(ErrorClass::InvalidInput, "internal: induced action is not a permutation");
    elems.push_back(std::move(p));
  }
  std::sort(elems.begin(), elems.end());
  size_t before = elems.size();
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.size() != before)
    throw Error(ErrorClass::InvalidInput, "internal: induced action is not faithful");
  return PermGroup{std::move(ground), std::move(elems), {}};
}

PermGroup global_wreath_group(const GlobalDomain& g) {
  int n = static_cast<int>(g.elems.size());
  if (n > 8) throw Error(ErrorClass::TooLarge, "global filter guard: " + std::to_string(n));
  std::vector<std::string> names;
  for (const auto& x : g.elems) {
    std::string s;
    for (size_t i = 0; i < x.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(x[i]);
    }
    names.push_back(s);
  }
  // x ~d y iff the restrictions to the cone above d agree
  auto same_above = [&](int x, int y, int d) {
    for (int up : g.sk.delta.up_set(d))
      if (g.elems[static_cast<size_t>(x)][static_cast<size_t>(up)] !=
          g.elems[static_cast<size_t>(y)][static_cast<size_t>(up)])
        return false;
    return true;
  };
  auto elems = filter_sym(n, [&](const Perm& p) {
    for (int d = 0; d < g.sk.size(); ++d)
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          if (same_above(x, y, d) !=
              same_above(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)], d))
            return false;
    return true;
  });
  return PermGroup{GroundSet(std::move(names)), std::move(elems), {}};
}

RewriteResult rewrite_system(const ProjectionSystem& ps) {
  RewriteResult out;
  out.family.sk = ps.sk;
  out.family.parts.resize(static_cast<size_t>(ps.sk.size()));
  out.rho.resize(static_cast<size_t>(ps.sk.size()));
  for (int d = 0; d < ps.sk.size(); ++d) {
    for (const Seq& z : ps.parts[static_cast<size_t>(d)]) {
      Seq r;
      r.base = d;
      for (int gamma : ps.sk.delta.up_set(d))
        r.vals.push_back(seq_value(ps.sk, ps.project(d, gamma, z), gamma));
      out.rho[static_cast<size_t>(d)].push_back(r);
    }
    auto sorted = out.rho[static_cast<size_t>(d)];
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    out.family.parts[static_cast<size_t>(d)] = std::move(sorted);
  }
  return out;
}

IsoWitness verify_rewrite(const ProjectionSystem& ps, long long max_order) {
  require_valid(ps);
  RewriteResult rw = rewrite_system(ps);
  const Skeleton& sk = ps.sk;

  // rewriting claims, checked exhaustively
  for (int d = 0; d < sk.size(); ++d) {
    const auto& part = ps.parts[static_cast<size_t>(d)];
    const auto& rho = rw.rho[static_cast<size_t>(d)];
    if (rho.size() != part.size() ||
        rw.family.parts[static_cast<size_t>(d)].size() != part.size())
      throw Error(ErrorClass::InvalidSystem, "rewriting is not injective on a block");
    for (size_t i = 0; i < part.size(); ++i) {
      if (seq_value(sk, rho[i], d) != seq_value(sk, part[i], d))
        throw Error(ErrorClass::InvalidSystem, "rewriting changes the bottom coordinate");
      if (!support_kind(sk.delta, seq_support(sk, rho[i])).max)
        throw Error(ErrorClass::InvalidSystem, "rewritten support violates the maximum condition");
      for (int gamma = 0; gamma < sk.size(); ++gamma) {
        if (!sk.delta.le(d, gamma)) continue;
        // image of the projection agrees with restriction of the rewriting
        const Seq& proj = ps.project(d, gamma, part[i]);
        Seq proj_rho = rw.rho[static_cast<size_t>(gamma)]
                             [static_cast<size_t>(ps.seq_index(gamma, proj))];
        if (!(seq_restrict(sk, rho[i], gamma) == proj_rho))
          throw Error(ErrorClass::InvalidSystem, "rewriting does not intertwine the projections");
        for (size_t j = i + 1; j < part.size(); ++j) {
          bool same_restr = seq_restrict(sk, part[i], gamma) == seq_restrict(sk, part[j], gamma);
          bool same_rho = seq_restrict(sk, rho[i], gamma) == seq_restrict(sk, rho[j], gamma);
          if (same_restr != same_rho)
            throw Error(ErrorClass::InvalidSystem, "rewriting breaks restriction equality");
        }
      }
    }
  }
  ValidationReport famrep = validate_local_family(rw.family);
  if (!famrep.ok())
    throw Error(ErrorClass::InvalidSystem,
                "rewritten family invalid: " + famrep.violations.front());

  PermGroup source = wreath_group_full(ps, max_order);
  ProjectionSystem target_sys = trivial_system(rw.family);
  PermGroup target = wreath_group_full(target_sys, max_order);

  CanonicalPoset cps = canonical_poset(ps);
  CanonicalPoset cpt = canonical_poset(target_sys);
  std::vector<int> bij(cps.entries.size());
  for (size_t e = 0; e < cps.entries.size(); ++e) {
    auto [d, zi] = cps.entries[e];
    const Seq& r = rw.rho[static_cast<size_t>(d)][static_cast<size_t>(zi)];
    bij[e] = cpt.entry_of(d, target_sys.seq_index(d, r));
  }
  return verify_conjugation(source, target, bij, "rewrite");
}

FiniteCharacterResult finite_character(const ProjectionSystem& ps, int upset_guard) {
  require_valid(ps);
  FiniteCharacterResult out;
  const Skeleton& sk = ps.sk;
  for (int d = 0; d < sk.size(); ++d) {
    std::vector<int> up = sk.delta.up_set(d);
    if (static_cast<int>(up.size()) > upset_guard)
      throw Error(ErrorClass::UpSetTooLarge,
                  "up-set of " + sk.delta.elems.name(d) + " exceeds the search guard");
    int m = static_cast<int>(up.size());
    // pairwise "projection is plain restriction" within the up-set
    std::vector<std::vector<bool>> triv(static_cast<size_t>(m),
                                        std::vector<bool>(static_cast<size_t>(m), true));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (!sk.delta.le(up[static_cast<size_t>(i)], up[static_cast<size_t>(j)])) continue;
        const auto& part = ps.parts[static_cast<size_t>(up[static_cast<size_t>(i)])];
        for (int zi = 0; zi < static_cast<int>(part.size()); ++zi) {
          Seq restr = seq_restrict(sk, part[static_cast<size_t>(zi)], up[static_cast<size_t>(j)]);
          if (ps.project_index(up[static_cast<size_t>(i)], up[static_cast<size_t>(j)], zi) !=
              ps.seq_index(up[static_cast<size_t>(j)], restr)) {
            triv[static_cast<size_t>(i)][static_cast<size_t>(j)] = false;
            break;
          }
        }
      }

    std::vector<int> piece(static_cast<size_t>(m), -1);
    std::vector<std::vector<int>> best;
    // iterative deepening on the number of pieces for a minimal witness
    bool found = false;
    for (int target = 1; target <= m && !found; ++target) {
      std::function<bool(int, int)> bounded = [&](int pos, int pieces_used) -> bool {
        if (pieces_used > target) return false;
        if (pos == m) {
          if (pieces_used != target) return false;
          best.assign(static_cast<size_t>(pieces_used), {});
          for (int i = 0; i < m; ++i)
            best[static_cast<size_t>(piece[static_cast<size_t>(i)])].push_back(
                up[static_cast<size_t>(i)]);
          return true;
        }
        for (int p = 0; p <= pieces_used && p < target; ++p) {
          bool ok = true;
          for (int i = 0; i < pos && ok; ++i)
            if (piece[static_cast<size_t>(i)] == p &&
                (!triv[static_cast<size_t>(i)][static_cast<size_t>(pos)] ||
                 !triv[static_cast<size_t>(pos)][static_cast<size_t>(i)]))
              ok = false;
          for (int i = 0; i < pos && ok; ++i)
            for (int j = 0; j < pos && ok; ++j) {
              if (piece[static_cast<size_t>(i)] != piece[static_cast<size_t>(j)]) continue;
              if (piece[static_cast<size_t>(i)] == p) continue;
              if (sk.delta.le(up[static_cast<size_t>(i)], up[static_cast<size_t>(pos)]) &&
                  sk.delta.le(up[static_cast<size_t>(pos)], up[static_cast<size_t>(j)]))
                ok = false;
            }
          for (int i = 0; i < pos && ok; ++i) {
            if (piece[static_cast<size_t>(i)] != p) continue;
            for (int j = 0; j < pos && ok; ++j) {
              if (piece[static_cast<size_t>(j)] == p || piece[static_cast<size_t>(j)] < 0) continue;
              if (sk.delta.le(up[static_cast<size_t>(i)], up[static_cast<size_t>(j)]) &&
                  sk.delta.le(up[static_cast<size_t>(j)], up[static_cast<size_t>(pos)]))
                ok = false;
            }
          }
          if (!ok) continue;
          piece[static_cast<size_t>(pos)] = p;
          if (bounded(pos + 1, std::max(pieces_used, p + 1))) return true;
          piece[static_cast<size_t>(pos)] = -1;
        }
        return false;
      };
      piece.assign(static_cast<size_t>(m), -1);
      found = bounded(0, 0);
    }
    if (!found) {
      out.value = false;  // cannot happen on finite data (singletons always work)
      continue;
    }
    out.pieces[d] = best;
  }
  return out;
}

bool has_finite_character(const ProjectionSystem& ps, int upset_guard) {
  return finite_character(ps, upset_guard).value;
}

bool is_locally_homogeneous(const ProjectionSystem& ps, long long max_order) {
  PermGroup wr = wreath_group_full(ps, max_order);
  CanonicalPoset cp = canonical_poset(ps);
  for (int d = 0; d < ps.sk.size(); ++d)
    if (!is_transitive(wr, cp.blocks[static_cast<size_t>(d)])) return false;
  return true;
}

bool is_locally_homogeneous(const SkeletonBundle& b, long long max_order) {
  return is_locally_homogeneous(to_system(b), max_order);
}

bool is_approximately_homogeneous(const GlobalDomain& g, long long max_order) {
  (void)max_order;
  PermGroup act = global_wreath_group(g);
  int n = static_cast<int>(g.elems.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int d = 0; d < g.sk.size(); ++d) {
        bool found = false;
        for (const Perm& p : act.elements) {
          const auto& gx = g.elems[static_cast<size_t>(p[static_cast<size_t>(x)])];
          const auto& gy = g.elems[static_cast<size_t>(y)];
          bool match = true;
          for (int up : g.sk.delta.up_set(d))
            if (gx[static_cast<size_t>(up)] != gy[static_cast<size_t>(up)]) {
              match = false;
              break;
            }
          if (match) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
  return true;
}

namespace {

std::string fresh_name(const GroundSet& taken, const std::string& base) {
  std::string name = base;
  while (taken.contains(name)) name = "_" + name;
  return name;
}

// mirror_of[i] gives, for added block added[i], the original block whose
// part list it mirrors index-for-index, or -1 for singleton pad blocks.
PaddedSystem finish_pad(const ProjectionSystem& old_ps, ProjectionSystem padded,
                        std::vector<int> added, const std::vector<int>& mirror_of,
                        long long max_order) {
  PermGroup before = wreath_group_full(old_ps, max_order);
  PermGroup after = wreath_group_full(padded, max_order);
  CanonicalPoset cp_old = canonical_poset(old_ps);
  CanonicalPoset cp_new = canonical_poset(padded);

  std::vector<int> mirror(static_cast<size_t>(padded.sk.size()), -1);
  for (size_t i = 0; i < added.size(); ++i)
    mirror[static_cast<size_t>(added[i])] = mirror_of[i];

  // block-wise index action of an old element, replayed on the new entries
  auto lift = [&](const Perm& g) {
    Perm out(cp_new.entries.size());
    for (size_t e = 0; e < cp_new.entries.size(); ++e) {
      auto [d, zi] = cp_new.entries[e];
      if (d < old_ps.sk.size()) {
        int old_entry = cp_old.entry_of(d, zi);
        auto [gd, gzi] = cp_old.entries[static_cast<size_t>(g[static_cast<size_t>(old_entry)])];
        (void)gd;
        out[e] = static_cast<int>(cp_new.entry_of(d, gzi));
      } else if (mirror[static_cast<size_t>(d)] < 0) {
        out[e] = static_cast<int>(e);  // singleton pad block
      } else {
        int src = mirror[static_cast<size_t>(d)];
        int old_src_entry = cp_old.entry_of(src, zi);
        auto [gd, gzi] = cp_old.entries[static_cast<size_t>(g[static_cast<size_t>(old_src_entry)])];
        (void)gd;
        out[e] = static_cast<int>(cp_new.entry_of(d, gzi));
      }
    }
    return out;
  };

  IsoWitness w = verify_homomorphic_image(before, after, lift, "padding");
  return PaddedSystem{std::move(padded), std::move(added), std::move(w)};
}

}  // namespace

PaddedSystem pad_top(const ProjectionSystem& ps, int k, long long max_order) {
  if (!ps.sk.level) throw Error(ErrorClass::MissingLevels, "padding requires a level map");
  require_valid(ps);
  if (k < 0) throw Error(ErrorClass::InvalidInput, "negative padding");

  ProjectionSystem out;
  Skeleton sk = ps.sk;
  int n_old = sk.size();

  Rat top = (*sk.level)[0];
  for (const Rat& r : *sk.level)
    if (r > top) top = r;

  std::vector<std::string> names = sk.delta.elems.names();
  std::vector<int> added;
  for (int i = 1; i <= k; ++i)
    names.push_back(fresh_name(GroundSet(names), "pt" + std::to_string(i)));
  GroundSet elems(names);

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n_old; ++a)
    for (int b = 0; b < n_old; ++b)
      if (sk.delta.le(a, b)) pairs.emplace_back(a, b);
  for (int i = 0; i < k; ++i) {
    added.push_back(n_old + i);
    for (int a = 0; a < n_old + i; ++a) pairs.emplace_back(a, n_old + i);
  }
  Skeleton sk2;
  sk2.delta = make_poset(elems, pairs);
  sk2.N = sk.N;
  std::vector<Rat> levels = *sk.level;
  for (int i = 1; i <= k; ++i) {
    sk2.N.push_back(1);
    levels.push_back(top + Rat(i));
  }
  sk2.level = std::move(levels);

  out.sk = sk2;
  for (int d = 0; d < n_old; ++d) {
    std::vector<Seq> part;
    for (const Seq& z : ps.parts[static_cast<size_t>(d)]) {
      Seq e = z;
      for (int i = 0; i < k; ++i) e.vals.push_back(0);
      part.push_back(std::move(e));
    }
    out.parts.push_back(std::move(part));
  }
  for (int i = 0; i < k; ++i) {
    Seq z;
    z.base = n_old + i;
    z.vals.assign(sk2.delta.up_set(n_old + i).size(), 0);
    out.parts.push_back({z});
  }
  for (int d = 0; d < sk2.size(); ++d)
    for (int g = 0; g < sk2.size(); ++g) {
      if (!sk2.delta.le(d, g)) continue;
      std::vector<int> table;
      if (d < n_old && g < n_old) {
        table = ps.pi.at({d, g});
      } else {
        table.assign(out.parts[static_cast<size_t>(d)].size(), 0);
        if (d == g)
          for (size_t i = 0; i < table.size(); ++i) table[i] = static_cast<int>(i);
      }
      out.pi[{d, g}] = std::move(table);
    }
  std::vector<int> mirror_of(added.size(), -1);
  return finish_pad(ps, std::move(out), std::move(added), mirror_of, max_order);
}

PaddedSystem pad_bottom(const ProjectionSystem& ps, int k, long long max_order) {
  if (!ps.sk.level) throw Error(ErrorClass::MissingLevels, "padding requires a level map");
  require_valid(ps);
  if (k < 0) throw Error(ErrorClass::InvalidInput, "negative padding");

  const Skeleton& sk = ps.sk;
  int n_old = sk.size();
  Rat bottom = (*sk.level)[0];
  for (const Rat& r : *sk.level)
    if (r < bottom) bottom = r;
  std::vector<int> bottom_blocks;
  for (int d = 0; d < n_old; ++d)
    if ((*sk.level)[static_cast<size_t>(d)] == bottom) bottom_blocks.push_back(d);

  std::vector<std::string> names = sk.delta.elems.names();
  std::vector<long long> arity = sk.N;
  std::vector<Rat> levels = *sk.level;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n_old; ++a)
    for (int b = 0; b < n_old; ++b)
      if (sk.delta.le(a, b)) pairs.emplace_back(a, b);

  std::vector<int> added;
  std::vector<int> chain_src;  // added block -> original bottom block
  for (int d : bottom_blocks) {
    int prev = d;
    for (int i = 1; i <= k; ++i) {
      int idx = static_cast<int>(names.size());
      names.push_back(fresh_name(GroundSet(names), "pb_" + sk.delta.elems.name(d) + "_" +
                                                       std::to_string(i)));
      arity.push_back(1);
      levels.push_back(bottom - Rat(i));
      pairs.emplace_back(idx, prev);
      added.push_back(idx);
      chain_src.push_back(d);
      prev = idx;
    }
  }
  Skeleton sk2;
  sk2.delta = make_poset(GroundSet(names), pairs);
  sk2.N = std::move(arity);
  sk2.level = std::move(levels);

  ProjectionSystem out;
  out.sk = sk2;
  for (int d = 0; d < n_old; ++d) out.parts.push_back(ps.parts[static_cast<size_t>(d)]);
  for (size_t a = 0; a < added.size(); ++a) {
    int idx = added[a];
    int src = chain_src[a];
    std::vector<Seq> part;
    size_t extra = sk2.delta.up_set(idx).size() - sk.delta.up_set(src).size();
    for (const Seq& z : ps.parts[static_cast<size_t>(src)]) {
      Seq e;
      e.base = idx;
      e.vals = z.vals;
      for (size_t i = 0; i < extra; ++i) e.vals.push_back(0);
      part.push_back(std::move(e));
    }
    out.parts.push_back(std::move(part));
  }
  for (int d = 0; d < sk2.size(); ++d)
    for (int g = 0; g < sk2.size(); ++g) {
      if (!sk2.delta.le(d, g)) continue;
      std::vector<int> table;
      int ds = d < n_old ? d : chain_src[static_cast<size_t>(d - n_old)];
      int gs = g < n_old ? g : chain_src[static_cast<size_t>(g - n_old)];
      size_t dn = out.parts[static_cast<size_t>(d)].size();
      if (g >= n_old) {
        // target inside a padded chain: index-stable
        (void)gs;
        table.resize(dn);
        for (size_t i = 0; i < dn; ++i) table[i] = static_cast<int>(i);
      } else {
        table.resize(dn);
        const auto& src_table = ps.pi.at({ds, g});
        for (size_t i = 0; i < dn; ++i) table[i] = src_table[i];
      }
      out.pi[{d, g}] = std::move(table);
    }
  return finish_pad(ps, std::move(out), std::move(added), chain_src, max_order);
}

Rat sequence_distance(const Skeleton& sk, const std::vector<int>& x,
                      const std::vector<int>& y, const std::vector<int>& enumeration) {
  if (static_cast<int>(x.size()) != sk.size() || static_cast<int>(y.size()) != sk.size())
    throw Error(ErrorClass::InvalidInput, "assignments do not match the skeleton");
  std::vector<bool> seen(static_cast<size_t>(sk.size()), false);
  for (int d : enumeration) {
    if (d < 0 || d >= sk.size() || seen[static_cast<size_t>(d)])
      throw Error(ErrorClass::InvalidInput, "enumeration is not a permutation of the skeleton");
    seen[static_cast<size_t>(d)] = true;
  }
  if (static_cast<int>(enumeration.size()) != sk.size())
    throw Error(ErrorClass::InvalidInput, "enumeration does not cover the skeleton");
  for (size_t m = 0; m < enumeration.size(); ++m) {
    int d = enumeration[m];
    for (int up : sk.delta.up_set(d))
      if (x[static_cast<size_t>(up)] != y[static_cast<size_t>(up)]) {
        if (m >= 62) throw Error(ErrorClass::TooLarge, "distance exponent too large");
        return Rat(1, 1LL << m);
      }
  }
  return Rat(0);
}

bool is_rigid_skeleton(const Skeleton& sk) {
  auto autos = filter_sym(sk.size(), [&](const Perm& p) {
    for (int a = 0; a < sk.size(); ++a) {
      if (sk.N[static_cast<size_t>(p[static_cast<size_t>(a)])] != sk.N[static_cast<size_t>(a)])
        return false;
      if (sk.level && (*sk.level)[static_cast<size_t>(p[static_cast<size_t>(a)])] !=
                          (*sk.level)[static_cast<size_t>(a)])
        return false;
      for (int b = 0; b < sk.size(); ++b)
        if (sk.delta.le(a, b) !=
            sk.delta.le(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]))
          return false;
    }
    return true;
  });
  return autos.size() == 1;
}

TreeFromWreath tree_from_wreath(const ProjectionSystem& ps, int depth,
                                const std::set<int>& untagged, long long max_order) {
  require_valid(ps);
  LTree sk_tree = skeleton_tree(ps.sk);  // MissingLevels / InvalidSystem if not treeable
  if (!is_pruned(sk_tree))
    throw Error(ErrorClass::InvalidSystem, "skeleton level witness is not pruned");
  CanonicalPoset cp = canonical_poset(ps);

  TreeFromWreath out;
  out.tag.assign(static_cast<size_t>(ps.sk.size()), 0);
  int next_tag = 1;
  for (int d = 0; d < ps.sk.size(); ++d)
    if (!untagged.count(d)) out.tag[static_cast<size_t>(d)] = next_tag++;
  int tags = next_tag - 1;
  if (tags == 0) throw Error(ErrorClass::InvalidInput, "no taggable block");
  if (depth < tags + 1)
    throw Error(ErrorClass::DepthTooSmall,
                "depth " + std::to_string(depth) + " < " + std::to_string(tags + 1));
  for (int d : untagged) {
    if (d < 0 || d >= ps.sk.size())
      throw Error(ErrorClass::InvalidInput, "untagged block out of range");
    if (ps.parts[static_cast<size_t>(d)].size() != 1)
      throw Error(ErrorClass::InvalidSystem, "untagged block is not a singleton");
    for (int e = 0; e < ps.sk.size(); ++e)
      if (e != d && sk_tree.level[static_cast<size_t>(e)] == sk_tree.level[static_cast<size_t>(d)])
        throw Error(ErrorClass::InvalidSystem, "untagged block shares its level");
  }

  const int LN = sk_tree.order.size();
  auto block_lidx = [&](int block) { return sk_tree.level[static_cast<size_t>(block)]; };

  // level pairs (n, l): 0 <= n <= depth-1 everywhere, plus (depth, 0);
  // ascending order is l asc, n desc
  struct PairKey {
    int l, n;
  };
  std::vector<PairKey> level_pairs;
  level_pairs.push_back({0, depth});
  for (int l = 0; l < LN; ++l)
    for (int n = depth - 1; n >= 0; --n) level_pairs.push_back({l, n});
  std::sort(level_pairs.begin(), level_pairs.end(), [](const PairKey& a, const PairKey& b) {
    if (a.l != b.l) return a.l < b.l;
    return a.n > b.n;
  });
  auto pair_index = [&](int n, int l) {
    if (n == depth) return 0;
    return 1 + l * depth + (depth - 1 - n);
  };

  // nodes
  struct Node {
    bool side;
    int n;
    int l;      // L-level index
    int entry;  // canonical poset entry
  };
  std::vector<Node> node_list;
  std::vector<std::string> node_names;
  std::map<std::tuple<bool, int, int, int>, int> node_ids;

  auto add_node = [&](bool side, int n, int l, int entry) {
    node_ids[{side, n, l, entry}] = static_cast<int>(node_list.size());
    node_list.push_back({side, n, l, entry});
    std::string nm = (side ? "s" : "m") + std::to_string(n) + (side ? ("," + std::to_string(l)) : "") +
                     ":" + cp.ground.name(entry);
    node_names.push_back(nm);
  };

  for (size_t e = 0; e < cp.entries.size(); ++e) {
    int block = cp.entries[e].first;
    int lz = block_lidx(block);
    for (int n = 0; n < depth; ++n) add_node(false, n, lz, static_cast<int>(e));
    int c = out.tag[static_cast<size_t>(block)];
    if (c == 0) continue;
    for (int l = 0; l <= lz; ++l) {
      int lo = (l == lz) ? c : 0;
      for (int n = lo; n <= depth - 1; ++n) add_node(true, n, l, static_cast<int>(e));
      if (l == 0) add_node(true, depth, 0, static_cast<int>(e));
    }
  }

  // canonical node order: level pair ascending, main before side, entry, n
  std::vector<int> order_ids(node_list.size());
  for (size_t i = 0; i < node_list.size(); ++i) order_ids[i] = static_cast<int>(i);
  std::sort(order_ids.begin(), order_ids.end(), [&](int a, int b) {
    const Node& x = node_list[static_cast<size_t>(a)];
    const Node& y = node_list[static_cast<size_t>(b)];
    int px = pair_index(x.n, x.l), py = pair_index(y.n, y.l);
    if (px != py) return px < py;
    if (x.side != y.side) return !x.side;
    if (x.entry != y.entry) return x.entry < y.entry;
    return x.n < y.n;
  });
  std::vector<int> new_id(node_list.size());
  for (size_t i = 0; i < order_ids.size(); ++i)
    new_id[static_cast<size_t>(order_ids[i])] = static_cast<int>(i);

  std::vector<std::string> names_sorted;
  std::vector<int> level_sorted, parent_sorted(node_list.size(), -1);
  names_sorted.resize(node_list.size());
  level_sorted.resize(node_list.size());

  auto id_of = [&](bool side, int n, int l, int entry) {
    auto it = node_ids.find({side, n, l, entry});
    if (it == node_ids.end())
      throw Error(ErrorClass::InvalidInput, "internal: missing truncation node");
    return new_id[static_cast<size_t>(it->second)];
  };

  for (size_t i = 0; i < node_list.size(); ++i) {
    const Node& nd = node_list[i];
    int me = new_id[i];
    names_sorted[static_cast<size_t>(me)] = node_names[i];
    level_sorted[static_cast<size_t>(me)] = pair_index(nd.n, nd.l);
    int block = cp.entries[static_cast<size_t>(nd.entry)].first;
    int lz = block_lidx(block);
    int c = out.tag[static_cast<size_t>(block)];
    int par = -1;
    if (!nd.side) {
      if (nd.n >= 1) {
        par = id_of(false, nd.n - 1, nd.l, nd.entry);
      } else if (nd.l < LN - 1) {
        int pblock = sk_tree.parent[static_cast<size_t>(block)];
        int pentry = cp.entry_of(pblock,
                                 ps.project_index(block, pblock, cp.entries[static_cast<size_t>(nd.entry)].second));
        par = id_of(false, depth - 1, nd.l + 1, pentry);
      }
    } else {
      if (nd.n == c && nd.l == lz) {
        par = id_of(false, c - 1, lz, nd.entry);
      } else if (nd.n >= 1 && !(nd.l == lz && nd.n - 1 < c)) {
        par = id_of(true, nd.n - 1, nd.l, nd.entry);
      } else {
        // n == 0 at a level strictly below lz: climb one L-level
        par = id_of(true, depth - 1, nd.l + 1, nd.entry);
      }
    }
    parent_sorted[static_cast<size_t>(me)] = par;
  }

  std::vector<Rat> level_labels;
  for (size_t i = 0; i < level_pairs.size(); ++i) level_labels.push_back(Rat(static_cast<long long>(i) + 1));

  out.tree = make_ltree(make_order(std::move(level_labels)), GroundSet(names_sorted),
                        std::move(level_sorted), std::move(parent_sorted));
  ValidationReport rep = validate_ltree(out.tree);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidSystem, "truncated tree invalid: " + rep.violations.front());

  PermGroup wr = wreath_group_full(ps, max_order);
  PermGroup aut = aut_group(out.tree, max_order);

  auto lift = [&](const Perm& g) {
    Perm p(out.tree.size());
    for (size_t i = 0; i < node_list.size(); ++i) {
      const Node& nd = node_list[i];
      int me = new_id[i];
      int img_entry = g[static_cast<size_t>(nd.entry)];
      p[static_cast<size_t>(me)] = id_of(nd.side, nd.n, nd.l, img_entry);
    }
    return p;
  };
  out.witness = verify_homomorphic_image(wr, aut, lift, "tree_from_wreath");
  return out;
}

}  // namespace umw
