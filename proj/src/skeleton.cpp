#include "umw/skeleton.hpp"

#include <algorithm>
#include <set>

#include "umw/error.hpp"

namespace umw {

std::vector<int> Poset::up_set(int a) const {
  std::vector<int> out;
  for (int b = 0; b < size(); ++b)
    if (le(a, b)) out.push_back(b);
  return out;
}

std::vector<int> Poset::maximal() const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a) {
    bool maximal = true;
    for (int b = 0; b < size() && maximal; ++b)
      if (lt(a, b)) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

std::vector<int> Poset::minimal() const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a) {
    bool minimal = true;
    for (int b = 0; b < size() && minimal; ++b)
      if (lt(b, a)) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

Poset make_poset(GroundSet elems, const std::vector<std::pair<int, int>>& le_pairs) {
  int n = elems.size();
  std::vector<std::vector<bool>> rel(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  for (int a = 0; a < n; ++a) rel[static_cast<size_t>(a)][static_cast<size_t>(a)] = true;
  for (auto [a, b] : le_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw Error(ErrorClass::SchemaError, "order pair out of range");
    rel[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (rel[static_cast<size_t>(a)][static_cast<size_t>(k)])
        for (int b = 0; b < n; ++b)
          if (rel[static_cast<size_t>(k)][static_cast<size_t>(b)])
            rel[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rel[static_cast<size_t>(a)][static_cast<size_t>(b)] &&
          rel[static_cast<size_t>(b)][static_cast<size_t>(a)])
        throw Error(ErrorClass::SchemaError,
                    "order is not antisymmetric at (" + elems.name(a) + "," + elems.name(b) + ")");
  return Poset{std::move(elems), std::move(rel)};
}

ValidationReport validate_skeleton(const Skeleton& sk) {
  ValidationReport rep;
  if (static_cast<int>(sk.N.size()) != sk.size())
    rep.violations.push_back("arity list does not match element count");
  for (size_t i = 0; i < sk.N.size(); ++i)
    if (sk.N[i] < 1)
      rep.violations.push_back("arity of " + sk.delta.elems.name(static_cast<int>(i)) +
                               " is not positive");
  if (sk.level) {
    if (static_cast<int>(sk.level->size()) != sk.size()) {
      rep.violations.push_back("level list does not match element count");
      return rep;
    }
    try {
      LTree t = skeleton_tree(sk);
      ValidationReport tr = validate_ltree(t);
      for (auto& v : tr.violations) rep.violations.push_back("level witness: " + v);
      if (tr.ok() && !is_pruned(t))
        rep.violations.push_back("level witness: tree is not pruned");
    } catch (const Error& e) {
      rep.violations.push_back(std::string("level witness: ") + e.what());
    }
  }
  return rep;
}

LTree skeleton_tree(const Skeleton& sk) {
  if (!sk.level) throw Error(ErrorClass::MissingLevels, "skeleton has no level map");
  std::vector<Rat> labels;
  for (const Rat& r : *sk.level)
    if (std::find(labels.begin(), labels.end(), r) == labels.end()) labels.push_back(r);
  std::sort(labels.begin(), labels.end());
  LinearOrder order = make_order(labels);

  int n = sk.size();
  std::vector<int> level(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    level[static_cast<size_t>(a)] = order.index_of((*sk.level)[static_cast<size_t>(a)]);

  std::vector<int> parent(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (level[static_cast<size_t>(a)] == order.size() - 1) continue;
    int found = -1;
    for (int b = 0; b < n; ++b) {
      if (b == a || !sk.delta.lt(a, b)) continue;
      if (level[static_cast<size_t>(b)] != level[static_cast<size_t>(a)] + 1) continue;
      if (found >= 0)
        throw Error(ErrorClass::InvalidSystem, "skeleton not treeable: ancestor at next level not unique for " +
                                                   sk.delta.elems.name(a));
      found = b;
    }
    if (found < 0)
      throw Error(ErrorClass::InvalidSystem,
                  "skeleton not treeable: no ancestor at next level for " + sk.delta.elems.name(a));
    parent[static_cast<size_t>(a)] = found;
  }
  LTree t = make_ltree(std::move(order), sk.delta.elems, std::move(level), std::move(parent));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.le(a, b) != sk.delta.le(a, b))
        throw Error(ErrorClass::InvalidSystem,
                    "skeleton not treeable: order disagrees with the level witness at (" +
                        sk.delta.elems.name(a) + "," + sk.delta.elems.name(b) + ")");
  return t;
}

bool is_treeable(const Skeleton& sk) {
  if (!sk.level) return false;
  try {
    return is_pruned(skeleton_tree(sk));
  } catch (const Error&) {
    return false;
  }
}

int seq_value(const Skeleton& sk, const Seq& z, int at) {
  std::vector<int> up = sk.delta.up_set(z.base);
  for (size_t i = 0; i < up.size(); ++i)
    if (up[i] == at) return z.vals[i];
  throw Error(ErrorClass::InvalidInput, "sequence has no value at " + sk.delta.elems.name(at));
}

Seq seq_restrict(const Skeleton& sk, const Seq& z, int to) {
  if (!sk.delta.le(z.base, to))
    throw Error(ErrorClass::InvalidInput, "restriction target is not above the base");
  Seq out;
  out.base = to;
  for (int g : sk.delta.up_set(to)) out.vals.push_back(seq_value(sk, z, g));
  return out;
}

Seq seq_perturb(const Skeleton& sk, const Seq& z, int value) {
  std::vector<int> up = sk.delta.up_set(z.base);
  Seq out = z;
  for (size_t i = 0; i < up.size(); ++i)
    if (up[i] == z.base) out.vals[i] = value;
  return out;
}

bool seq_extends(const Skeleton& sk, const Seq& lower, const Seq& upper) {
  if (!sk.delta.le(lower.base, upper.base)) return false;
  return seq_restrict(sk, lower, upper.base) == upper;
}

std::vector<int> seq_support(const Skeleton& sk, const Seq& z) {
  std::vector<int> up = sk.delta.up_set(z.base);
  std::vector<int> out;
  for (size_t i = 0; i < up.size(); ++i)
    if (z.vals[i] != 0) out.push_back(up[i]);
  return out;
}

std::string seq_name(const Skeleton& sk, const Seq& z) {
  std::string s = sk.delta.elems.name(z.base) + "|";
  for (size_t i = 0; i < z.vals.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(z.vals[i]);
  }
  return s;
}

std::vector<Seq> all_seqs(const Skeleton& sk, int base) {
  std::vector<int> up = sk.delta.up_set(base);
  std::vector<Seq> out;
  Seq cur;
  cur.base = base;
  cur.vals.assign(up.size(), 0);
  while (true) {
    out.push_back(cur);
    int pos = static_cast<int>(up.size()) - 1;
    while (pos >= 0) {
      long long nmax = sk.N[static_cast<size_t>(up[static_cast<size_t>(pos)])];
      if (cur.vals[static_cast<size_t>(pos)] + 1 < nmax) {
        ++cur.vals[static_cast<size_t>(pos)];
        for (size_t j = static_cast<size_t>(pos) + 1; j < up.size(); ++j) cur.vals[j] = 0;
        break;
      }
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validate_local_family(const LocalFamily& f) {
  ValidationReport rep;
  const Skeleton& sk = f.sk;
  if (static_cast<int>(f.parts.size()) != sk.size()) {
    rep.violations.push_back("family does not cover every element");
    return rep;
  }
  for (int d = 0; d < sk.size(); ++d) {
    const auto& part = f.parts[static_cast<size_t>(d)];
    if (part.empty()) rep.violations.push_back("empty domain at " + sk.delta.elems.name(d));
    for (const Seq& z : part) {
      if (z.base != d || z.vals.size() != sk.delta.up_set(d).size()) {
        rep.violations.push_back("malformed sequence in " + sk.delta.elems.name(d));
        continue;
      }
      for (long long i = 0; i < sk.N[static_cast<size_t>(d)]; ++i) {
        Seq p = seq_perturb(sk, z, static_cast<int>(i));
        if (!std::binary_search(part.begin(), part.end(), p))
          rep.violations.push_back("not perturbation-closed: " + seq_name(sk, p) + " missing");
      }
    }
  }
  for (int d = 0; d < sk.size(); ++d)
    for (int g = 0; g < sk.size(); ++g) {
      if (!sk.delta.le(d, g) || d == g) continue;
      std::set<Seq> image;
      for (const Seq& z : f.parts[static_cast<size_t>(d)]) image.insert(seq_restrict(sk, z, g));
      std::set<Seq> target(f.parts[static_cast<size_t>(g)].begin(),
                           f.parts[static_cast<size_t>(g)].end());
      if (image != target)
        rep.violations.push_back("restriction image of " + sk.delta.elems.name(d) +
                                 " does not equal the domain at " + sk.delta.elems.name(g));
    }
  return rep;
}

LocalFamily full_local_family(const Skeleton& sk) {
  LocalFamily f;
  f.sk = sk;
  for (int d = 0; d < sk.size(); ++d) f.parts.push_back(all_seqs(sk, d));
  return f;
}

int ProjectionSystem::seq_index(int block, const Seq& z) const {
  const auto& part = parts[static_cast<size_t>(block)];
  auto it = std::lower_bound(part.begin(), part.end(), z);
  if (it == part.end() || !(*it == z))
    throw Error(ErrorClass::InvalidInput, "sequence not in its block: " + seq_name(sk, z));
  return static_cast<int>(it - part.begin());
}

const Seq& ProjectionSystem::project(int from, int to, const Seq& z) const {
  int zi = seq_index(from, z);
  return parts[static_cast<size_t>(to)][static_cast<size_t>(project_index(from, to, zi))];
}

int ProjectionSystem::project_index(int from, int to, int zi) const {
  auto it = pi.find({from, to});
  if (it == pi.end())
    throw Error(ErrorClass::InvalidInput, "no projection for the given pair");
  return it->second[static_cast<size_t>(zi)];
}

long long ProjectionSystem::total_seqs() const {
  long long n = 0;
  for (const auto& p : parts) n += static_cast<long long>(p.size());
  return n;
}

ValidationReport validate_projection_system(const ProjectionSystem& ps) {
  ValidationReport rep;
  const Skeleton& sk = ps.sk;
  if (static_cast<int>(ps.parts.size()) != sk.size()) {
    rep.violations.push_back("system does not cover every element");
    return rep;
  }
  for (int d = 0; d < sk.size(); ++d) {
    const auto& part = ps.parts[static_cast<size_t>(d)];
    if (part.empty()) rep.violations.push_back("empty domain at " + sk.delta.elems.name(d));
    if (!std::is_sorted(part.begin(), part.end()))
      rep.violations.push_back("unsorted domain at " + sk.delta.elems.name(d));
    for (const Seq& z : part)
      for (long long i = 0; i < sk.N[static_cast<size_t>(d)]; ++i) {
        Seq p = seq_perturb(sk, z, static_cast<int>(i));
        if (!std::binary_search(part.begin(), part.end(), p))
          rep.violations.push_back("not perturbation-closed at " + sk.delta.elems.name(d));
      }
  }
  for (int d = 0; d < sk.size(); ++d)
    for (int g = 0; g < sk.size(); ++g) {
      if (!sk.delta.le(d, g)) continue;
      auto it = ps.pi.find({d, g});
      if (it == ps.pi.end()) {
        rep.violations.push_back("missing projection (" + sk.delta.elems.name(d) + "," +
                                 sk.delta.elems.name(g) + ")");
        continue;
      }
      const auto& part = ps.parts[static_cast<size_t>(d)];
      const auto& tgt = ps.parts[static_cast<size_t>(g)];
      if (it->second.size() != part.size()) {
        rep.violations.push_back("projection table size mismatch at (" + sk.delta.elems.name(d) +
                                 "," + sk.delta.elems.name(g) + ")");
        continue;
      }
      std::vector<bool> hit(tgt.size(), false);
      for (int zi = 0; zi < static_cast<int>(part.size()); ++zi) {
        int im = it->second[static_cast<size_t>(zi)];
        if (im < 0 || im >= static_cast<int>(tgt.size())) {
          rep.violations.push_back("projection image out of range at (" + sk.delta.elems.name(d) +
                                   "," + sk.delta.elems.name(g) + ")");
          continue;
        }
        hit[static_cast<size_t>(im)] = true;
        if (d == g && im != zi)
          rep.violations.push_back("projection at (" + sk.delta.elems.name(d) + "," +
                                   sk.delta.elems.name(d) + ") is not the identity on " +
                                   seq_name(sk, part[static_cast<size_t>(zi)]));
      }
      for (size_t i = 0; i < hit.size(); ++i)
        if (!hit[i])
          rep.violations.push_back("projection not surjective onto " + seq_name(sk, tgt[i]));
      // congruence with restriction (axiom a)
      for (size_t i = 0; i < part.size(); ++i)
        for (size_t j = i + 1; j < part.size(); ++j) {
          bool same_restr = seq_restrict(sk, part[i], g) == seq_restrict(sk, part[j], g);
          bool same_proj = it->second[i] == it->second[j];
          if (same_restr != same_proj)
            rep.violations.push_back("restriction congruence fails at (" + sk.delta.elems.name(d) +
                                     "," + sk.delta.elems.name(g) + ") on " +
                                     seq_name(sk, part[i]) + " vs " + seq_name(sk, part[j]));
        }
    }
  // compositionality (axiom b), offending tuple named
  for (int d = 0; d < sk.size(); ++d)
    for (int g = 0; g < sk.size(); ++g)
      for (int b = 0; b < sk.size(); ++b) {
        if (!sk.delta.le(d, g) || !sk.delta.le(g, b)) continue;
        if (!ps.pi.count({d, g}) || !ps.pi.count({g, b}) || !ps.pi.count({d, b})) continue;
        const auto& part = ps.parts[static_cast<size_t>(d)];
        for (int zi = 0; zi < static_cast<int>(part.size()); ++zi) {
          int via = ps.project_index(g, b, ps.project_index(d, g, zi));
          int direct = ps.project_index(d, b, zi);
          if (via != direct)
            rep.violations.push_back(
                "composition fails at (" + sk.delta.elems.name(d) + "," + sk.delta.elems.name(g) +
                "," + sk.delta.elems.name(b) + ") on " +
                seq_name(sk, part[static_cast<size_t>(zi)]));
        }
      }
  return rep;
}

ProjectionSystem trivial_system(const LocalFamily& f) {
  ProjectionSystem ps;
  ps.sk = f.sk;
  ps.parts = f.parts;
  for (int d = 0; d < ps.sk.size(); ++d)
    for (int g = 0; g < ps.sk.size(); ++g) {
      if (!ps.sk.delta.le(d, g)) continue;
      std::vector<int> table;
      for (const Seq& z : ps.parts[static_cast<size_t>(d)])
        table.push_back(ps.seq_index(g, seq_restrict(ps.sk, z, g)));
      ps.pi[{d, g}] = std::move(table);
    }
  return ps;
}

LocalFamily family_of(const ProjectionSystem& ps) { return LocalFamily{ps.sk, ps.parts}; }

namespace {

std::vector<std::vector<int>> all_assignments(const Skeleton& sk) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(sk.size()), 0);
  while (true) {
    out.push_back(cur);
    int pos = sk.size() - 1;
    while (pos >= 0) {
      if (cur[static_cast<size_t>(pos)] + 1 < sk.N[static_cast<size_t>(pos)]) {
        ++cur[static_cast<size_t>(pos)];
        for (size_t j = static_cast<size_t>(pos) + 1; j < cur.size(); ++j) cur[j] = 0;
        break;
      }
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Seq assignment_restrict(const Skeleton& sk, const std::vector<int>& x, int base) {
  Seq z;
  z.base = base;
  for (int g : sk.delta.up_set(base)) z.vals.push_back(x[static_cast<size_t>(g)]);
  return z;
}

class FiniteSupportUniverse : public SupportUniverse {
 public:
  FiniteSupportUniverse(const Poset& delta, std::vector<int> a)
      : delta_(delta), a_(std::move(a)) {}

  bool set_is_finite() const override { return true; }

  bool upcone_intersections_all_finite() const override {
    for (int d = 0; d < delta_.size(); ++d) {
      long long count = 0;
      for (int x : a_)
        if (delta_.le(d, x)) ++count;
      (void)count;  // finite by inspection
    }
    return true;
  }

  bool has_infinite_ascending_chain() const override {
    return longest_chain(true) < 0;  // never: chains are bounded by |A|
  }

  bool has_infinite_descending_chain_with_lower_bound() const override {
    return longest_chain(false) < 0;
  }

 private:
  // length of the longest strict chain inside A, in the given direction;
  // always finite here, returned as a nonnegative number
  int longest_chain(bool ascending) const {
    int best = 0;
    std::vector<int> memo(a_.size(), -1);
    for (size_t i = 0; i < a_.size(); ++i) best = std::max(best, chain_from(i, ascending, memo));
    return best;
  }

  int chain_from(size_t i, bool ascending, std::vector<int>& memo) const {
    if (memo[i] >= 0) return memo[i];
    int best = 1;
    for (size_t j = 0; j < a_.size(); ++j) {
      if (i == j) continue;
      bool step = ascending ? delta_.lt(a_[i], a_[j]) : delta_.lt(a_[j], a_[i]);
      if (step) best = std::max(best, 1 + chain_from(j, ascending, memo));
    }
    memo[i] = best;
    return best;
  }

  const Poset& delta_;
  std::vector<int> a_;
};

}  // namespace

SupportFlags evaluate_supports(const SupportUniverse& u) {
  SupportFlags f;
  f.fin = u.set_is_finite();
  f.lf = u.upcone_intersections_all_finite();
  f.max = !u.has_infinite_ascending_chain();
  f.wsp = f.max && !u.has_infinite_descending_chain_with_lower_bound();
  return f;
}

SupportFlags support_kind(const Poset& delta, const std::vector<int>& a) {
  return evaluate_supports(FiniteSupportUniverse(delta, a));
}

GlobalDomain domain_from_supports(const Skeleton& sk, SupportTag tag) {
  GlobalDomain g;
  g.sk = sk;
  for (const auto& x : all_assignments(sk)) {
    std::vector<int> supp;
    for (int d = 0; d < sk.size(); ++d)
      if (x[static_cast<size_t>(d)] != 0) supp.push_back(d);
    SupportFlags f = support_kind(sk.delta, supp);
    bool admit = false;
    switch (tag) {
      case SupportTag::Fin: admit = f.fin; break;
      case SupportTag::LF: admit = f.lf; break;
      case SupportTag::Wsp: admit = f.wsp; break;
      case SupportTag::Max: admit = f.max; break;
    }
    if (admit) g.elems.push_back(x);
  }
  return g;
}

LocalFamily locals_from_global(const GlobalDomain& g) {
  LocalFamily f;
  f.sk = g.sk;
  f.parts.resize(static_cast<size_t>(g.sk.size()));
  for (int d = 0; d < g.sk.size(); ++d) {
    std::set<Seq> seen;
    for (const auto& x : g.elems) seen.insert(assignment_restrict(g.sk, x, d));
    f.parts[static_cast<size_t>(d)].assign(seen.begin(), seen.end());
  }
  return f;
}

GlobalDomain global_from_full(const LocalFamily& f) {
  GlobalDomain g;
  g.sk = f.sk;
  for (const auto& x : all_assignments(f.sk)) {
    bool ok = true;
    for (int d = 0; d < f.sk.size() && ok; ++d) {
      Seq z = assignment_restrict(f.sk, x, d);
      const auto& part = f.parts[static_cast<size_t>(d)];
      if (!std::binary_search(part.begin(), part.end(), z)) ok = false;
    }
    if (ok) g.elems.push_back(x);
  }
  // fullness: every local sequence must be covered by some global element
  for (int d = 0; d < f.sk.size(); ++d)
    for (const Seq& z : f.parts[static_cast<size_t>(d)]) {
      bool covered = false;
      for (const auto& x : g.elems)
        if (assignment_restrict(f.sk, x, d) == z) {
          covered = true;
          break;
        }
      if (!covered)
        throw Error(ErrorClass::NotFull, "sequence " + seq_name(f.sk, z) +
                                             " does not extend to a coherent global element");
    }
  return g;
}

bool is_full(const LocalFamily& f) {
  try {
    global_from_full(f);
    return true;
  } catch (const Error& e) {
    if (e.cls() == ErrorClass::NotFull) return false;
    throw;
  }
}

bool is_full(const ProjectionSystem& ps) {
  // coherent selections through pi, searched by backtracking over blocks
  int n = ps.sk.size();
  for (int d0 = 0; d0 < n; ++d0)
    for (int z0 = 0; z0 < static_cast<int>(ps.parts[static_cast<size_t>(d0)].size()); ++z0) {
      std::vector<int> pick(static_cast<size_t>(n), -1);
      pick[static_cast<size_t>(d0)] = z0;
      // propagate upward from fixed picks, then try all fillings
      std::vector<int> order;
      for (int d = 0; d < n; ++d) order.push_back(d);
      std::function<bool(size_t)> fill = [&](size_t pos) -> bool {
        if (pos == order.size()) return true;
        int d = order[pos];
        if (pick[static_cast<size_t>(d)] >= 0) {
          // consistency with already-picked comparable blocks
          for (int e = 0; e < n; ++e) {
            if (pick[static_cast<size_t>(e)] < 0) continue;
            if (ps.sk.delta.le(d, e) &&
                ps.project_index(d, e, pick[static_cast<size_t>(d)]) != pick[static_cast<size_t>(e)])
              return false;
            if (ps.sk.delta.le(e, d) &&
                ps.project_index(e, d, pick[static_cast<size_t>(e)]) != pick[static_cast<size_t>(d)])
              return false;
          }
          return fill(pos + 1);
        }
        for (int zi = 0; zi < static_cast<int>(ps.parts[static_cast<size_t>(d)].size()); ++zi) {
          pick[static_cast<size_t>(d)] = zi;
          bool ok = true;
          for (int e = 0; e < n && ok; ++e) {
            if (pick[static_cast<size_t>(e)] < 0 || e == d) continue;
            if (ps.sk.delta.le(d, e) &&
                ps.project_index(d, e, zi) != pick[static_cast<size_t>(e)])
              ok = false;
            if (ps.sk.delta.le(e, d) &&
                ps.project_index(e, d, pick[static_cast<size_t>(e)]) != zi)
              ok = false;
          }
          if (ok && fill(pos + 1)) return true;
          pick[static_cast<size_t>(d)] = -1;
        }
        return false;
      };
      if (!fill(0)) return false;
    }
  return true;
}

int CanonicalPoset::entry_of(int block, int seq_index) const {
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].first == block && entries[i].second == seq_index) return static_cast<int>(i);
  throw Error(ErrorClass::InvalidInput, "no such entry in the canonical poset");
}

CanonicalPoset canonical_poset(const ProjectionSystem& ps) {
  CanonicalPoset cp;
  std::vector<std::string> names;
  cp.blocks.resize(static_cast<size_t>(ps.sk.size()));
  for (int d = 0; d < ps.sk.size(); ++d)
    for (int zi = 0; zi < static_cast<int>(ps.parts[static_cast<size_t>(d)].size()); ++zi) {
      cp.blocks[static_cast<size_t>(d)].push_back(static_cast<int>(cp.entries.size()));
      cp.entries.emplace_back(d, zi);
      names.push_back(seq_name(ps.sk, ps.parts[static_cast<size_t>(d)][static_cast<size_t>(zi)]));
    }
  GroundSet ground(names);
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < cp.entries.size(); ++i)
    for (size_t j = 0; j < cp.entries.size(); ++j) {
      auto [d, zi] = cp.entries[i];
      auto [g, wi] = cp.entries[j];
      if (!ps.sk.delta.le(d, g)) continue;
      if (ps.project_index(d, g, zi) == wi) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  cp.ground = ground;
  cp.poset = make_poset(std::move(ground), pairs);
  return cp;
}

SkeletonBundle bundle_from_supports(const Skeleton& sk, SupportTag tag) {
  SkeletonBundle b;
  b.kind = SkeletonBundle::Kind::Supports;
  b.sk = sk;
  b.tag = tag;
  return b;
}

SkeletonBundle bundle_from_global(GlobalDomain g) {
  SkeletonBundle b;
  b.kind = SkeletonBundle::Kind::Global;
  b.sk = g.sk;
  b.global = std::move(g);
  return b;
}

SkeletonBundle bundle_from_locals(LocalFamily f) {
  SkeletonBundle b;
  b.kind = SkeletonBundle::Kind::Locals;
  b.sk = f.sk;
  b.locals = std::move(f);
  return b;
}

SkeletonBundle bundle_from_system(ProjectionSystem ps) {
  SkeletonBundle b;
  b.kind = SkeletonBundle::Kind::System;
  b.sk = ps.sk;
  b.system = std::move(ps);
  return b;
}

ProjectionSystem to_system(const SkeletonBundle& b) {
  switch (b.kind) {
    case SkeletonBundle::Kind::Supports:
      return trivial_system(locals_from_global(domain_from_supports(b.sk, b.tag)));
    case SkeletonBundle::Kind::Global:
      return trivial_system(locals_from_global(*b.global));
    case SkeletonBundle::Kind::Locals:
      return trivial_system(*b.locals);
    case SkeletonBundle::Kind::System:
      return *b.system;
  }
  throw Error(ErrorClass::InvalidInput, "unknown bundle kind");
}

CondensedBundle condensed_skeleton(const LTree& t, long long max_order) {
  CondensedBundle out;
  out.aut = aut_group(t, max_order);
  out.cond = condense(t, max_order);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < out.cond.tree.size(); ++a)
    for (int b = 0; b < out.cond.tree.size(); ++b)
      if (out.cond.tree.le(a, b)) pairs.emplace_back(a, b);
  Skeleton sk;
  sk.delta = make_poset(out.cond.tree.nodes, pairs);
  sk.N = cluster_sizes(t, out.aut, out.cond);
  std::vector<Rat> levels;
  for (int c = 0; c < out.cond.tree.size(); ++c) levels.push_back(out.cond.tree.level_label(c));
  sk.level = std::move(levels);
  out.sk = std::move(sk);
  return out;
}

}  // namespace umw
