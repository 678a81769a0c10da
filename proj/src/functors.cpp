#include "umw/functors.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "umw/error.hpp"

namespace umw {

BallTree ball_tree(const UltraSpace& u, const LinearOrder& levels) {
  std::vector<Rat> dset = distance_set(u);
  for (const Rat& d : dset)
    if (!levels.contains(d))
      throw Error(ErrorClass::ConditionTwoViolated,
                  "distance " + d.str() + " is not a level");
  if (!dset.empty()) {
    if (!(levels.label(0) <= dset.front()))
      throw Error(ErrorClass::ConditionTwoViolated,
                  "no level at or below the minimal distance " + dset.front().str());
    if (!(dset.back() < levels.label(levels.size() - 1)))
      throw Error(ErrorClass::ConditionTwoViolated,
                  "no level above the maximal distance " + dset.back().str());
  }

  int n = u.size();
  int ln = levels.size();
  // collect distinct balls per level, canonical order: (level, ball contents)
  std::map<std::pair<int, std::vector<int>>, int> ids;
  std::vector<std::pair<int, std::vector<int>>> keys;
  for (int l = 0; l < ln; ++l)
    for (int x = 0; x < n; ++x) {
      auto key = std::make_pair(l, ball(u, x, levels.label(l)));
      if (!ids.count(key)) {
        ids[key] = 0;
        keys.push_back(key);
      }
    }
  std::sort(keys.begin(), keys.end());
  for (size_t i = 0; i < keys.size(); ++i) ids[keys[i]] = static_cast<int>(i);

  std::vector<std::string> names;
  std::vector<int> level, parent(keys.size(), -1);
  for (const auto& k : keys) {
    std::string nm = "{";
    for (size_t i = 0; i < k.second.size(); ++i) {
      if (i) nm += ",";
      nm += u.points.name(k.second[i]);
    }
    nm += "}@" + levels.label(k.first).str();
    names.push_back(nm);
    level.push_back(k.first);
  }
  BallTree out;
  out.node_of.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(ln), -1));
  for (int l = 0; l < ln; ++l)
    for (int x = 0; x < n; ++x)
      out.node_of[static_cast<size_t>(x)][static_cast<size_t>(l)] =
          ids.at({l, ball(u, x, levels.label(l))});
  for (size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].first == ln - 1) continue;
    int x = keys[i].second.front();
    parent[i] = out.node_of[static_cast<size_t>(x)][static_cast<size_t>(keys[i].first + 1)];
  }
  out.tree = make_ltree(levels, GroundSet(std::move(names)), std::move(level), std::move(parent));

  ValidationReport rep = validate_ltree(out.tree);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidInput, "internal: ball tree invalid: " + rep.violations.front());
  if (!is_pruned(out.tree))
    throw Error(ErrorClass::InvalidInput, "internal: ball tree is not pruned");
  return out;
}

std::vector<int> ball_tree_map(const UltraSpace& u, const BallTree& bu,
                               const UltraSpace& v, const BallTree& bv,
                               const std::vector<int>& psi) {
  if (static_cast<int>(psi.size()) != u.size())
    throw Error(ErrorClass::InvalidInput, "point map does not cover the space");
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y)
      if (u.d(x, y) != v.d(psi[static_cast<size_t>(x)], psi[static_cast<size_t>(y)]))
        throw Error(ErrorClass::NotIsometric,
                    "map does not preserve d(" + u.points.name(x) + "," + u.points.name(y) + ")");
  std::vector<int> f(static_cast<size_t>(bu.tree.size()), -1);
  int ln = bu.tree.order.size();
  for (int x = 0; x < u.size(); ++x)
    for (int l = 0; l < ln; ++l)
      f[static_cast<size_t>(bu.node_of[static_cast<size_t>(x)][static_cast<size_t>(l)])] =
          bv.node_of[static_cast<size_t>(psi[static_cast<size_t>(x)])][static_cast<size_t>(l)];
  return f;
}

BallTreeIso verify_ball_tree_iso(const UltraSpace& u, const LinearOrder& levels,
                                 long long max_order) {
  BallTreeIso out;
  out.bt = ball_tree(u, levels);
  out.iso = iso_group(u, max_order);
  out.aut = aut_group(out.bt.tree, max_order);
  const BallTree& bt = out.bt;
  auto lift = [&](const Perm& psi) { return ball_tree_map(u, bt, u, bt, psi); };
  out.witness = verify_homomorphic_image(out.iso, out.aut, lift, "ball_tree");
  return out;
}

LinearOrder canonical_levels(const UltraSpace& u, long long max_order) {
  std::vector<Rat> dset = distance_set(u);
  if (dset.empty()) return make_order({Rat(1), Rat(2)});

  std::set<std::pair<long long, long long>> seen;
  std::vector<Rat> levels;
  auto add = [&](const Rat& r) {
    if (seen.insert({r.num(), r.den()}).second) levels.push_back(r);
  };
  for (const Rat& d : dset) add(d);
  add(dset.front());
  add(dset.back() * Rat(2));

  // for each point pair, the largest base level below which no isometry
  // carries one point within reach of the other; finite suprema are maxima,
  // so nothing new can appear (checked)
  PermGroup iso = iso_group(u, max_order);
  std::vector<Rat> base = levels;
  std::sort(base.begin(), base.end());
  for (int x = 0; x < u.size(); ++x)
    for (int y = 0; y < u.size(); ++y) {
      Rat best(0);
      bool any = false;
      for (const Rat& l : base) {
        bool moved = false;
        for (const Perm& p : iso.elements)
          if (u.d(p[static_cast<size_t>(x)], y) < l) {
            moved = true;
            break;
          }
        if (!moved && (!any || best < l)) {
          best = l;
          any = true;
        }
      }
      if (any) add(best);
    }
  if (levels.size() != base.size())
    throw Error(ErrorClass::InvalidInput, "internal: finite level maxima left the base set");
  std::sort(levels.begin(), levels.end());
  return make_order(std::move(levels));
}

LevelEmbedding make_embedding(LinearOrder order, std::vector<Rat> lo, std::vector<Rat> hi) {
  if (static_cast<int>(lo.size()) != order.size() || lo.size() != hi.size())
    throw Error(ErrorClass::SchemaError, "embedding does not cover the level order");
  for (int i = 0; i < order.size(); ++i) {
    if (!(Rat(0) < lo[static_cast<size_t>(i)] && lo[static_cast<size_t>(i)] < hi[static_cast<size_t>(i)]))
      throw Error(ErrorClass::SchemaError, "embedding pair not increasing at level " +
                                               order.label(i).str());
    if (i + 1 < order.size() && !(hi[static_cast<size_t>(i)] < lo[static_cast<size_t>(i) + 1]))
      throw Error(ErrorClass::SchemaError, "embedding pairs not interleaved at level " +
                                               order.label(i).str());
  }
  return LevelEmbedding{std::move(order), std::move(lo), std::move(hi)};
}

LevelEmbedding default_embedding(const LinearOrder& order) {
  std::vector<Rat> lo, hi;
  for (int i = 0; i < order.size(); ++i) {
    lo.push_back(Rat(2 * i + 1));
    hi.push_back(Rat(2 * i + 2));
  }
  return make_embedding(order, std::move(lo), std::move(hi));
}

UltraSpace tree_space(const LTree& t, const LevelEmbedding& emb) {
  if (!is_pruned(t)) throw Error(ErrorClass::NotPruned, "tree metric needs a pruned tree");
  if (emb.order.labels != t.order.labels)
    throw Error(ErrorClass::SchemaError, "embedding is over a different level order");

  int n = t.size();
  std::vector<std::vector<Rat>> dist(static_cast<size_t>(n),
                                     std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      Rat d(0);
      if (t.le(a, b))
        d = emb.lo[static_cast<size_t>(t.level[static_cast<size_t>(b)])];
      else if (t.le(b, a))
        d = emb.lo[static_cast<size_t>(t.level[static_cast<size_t>(a)])];
      else
        d = emb.hi[static_cast<size_t>(split_level_index(t, a, b))];
      dist[static_cast<size_t>(a)][static_cast<size_t>(b)] = d;
    }
  UltraSpace u{t.nodes, std::move(dist)};
  ValidationReport rep = validate_space(u);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidInput,
                "internal: tree metric is not ultrametric: " + rep.violations.front());
  return u;
}

TreeSpaceDiagnostic tree_space_diagnostic(const LTree& t, const LevelEmbedding& emb,
                                          long long max_order) {
  TreeSpaceDiagnostic out;
  out.aut = aut_group(t, max_order);
  out.iso = iso_group(tree_space(t, emb), max_order);
  for (const Perm& p : out.aut.elements)
    if (!out.iso.contains(p))
      throw Error(ErrorClass::InvalidInput,
                  "internal: tree automorphism fails to preserve the tree metric");
  out.equal = out.aut.elements == out.iso.elements;
  return out;
}

PaddedTree pad_chain(const LTree& t, int k, long long max_order) {
  if (k < 0) throw Error(ErrorClass::InvalidInput, "negative padding");
  PaddedTree out;
  if (k == 0) {
    out.tree = t;
    PermGroup a = aut_group(t, max_order);
    out.witness = verify_homomorphic_image(a, a, [](const Perm& p) { return p; }, "pad_chain");
    return out;
  }

  std::vector<Rat> labels;
  for (int i = k; i >= 1; --i) labels.push_back(t.order.label(0) - Rat(i));
  for (const Rat& r : t.order.labels) labels.push_back(r);

  std::vector<std::string> names = t.nodes.names();
  std::vector<int> level(t.level), parent(t.parent);
  for (int& l : level) l += k;
  std::vector<int> bottoms = t.level_nodes(0);
  for (int b : bottoms) {
    int prev = b;
    for (int i = 1; i <= k; ++i) {
      int idx = static_cast<int>(names.size());
      std::string nm = t.nodes.name(b) + "~" + std::to_string(i);
      while (std::find(names.begin(), names.end(), nm) != names.end()) nm = "_" + nm;
      names.push_back(nm);
      level.push_back(k - i);
      parent.push_back(prev);
      prev = idx;
    }
  }
  out.tree = make_ltree(make_order(std::move(labels)), GroundSet(names), std::move(level),
                        std::move(parent));

  PermGroup before = aut_group(t, max_order);
  PermGroup after = aut_group(out.tree, max_order);
  int n_old = t.size();
  // appended nodes are grouped per bottom node, k of them, in bottom order
  auto lift = [&](const Perm& p) {
    Perm q(static_cast<size_t>(out.tree.size()));
    for (int v = 0; v < n_old; ++v) q[static_cast<size_t>(v)] = p[static_cast<size_t>(v)];
    for (size_t bi = 0; bi < bottoms.size(); ++bi) {
      int image = p[static_cast<size_t>(bottoms[bi])];
      size_t img_pos = static_cast<size_t>(
          std::find(bottoms.begin(), bottoms.end(), image) - bottoms.begin());
      for (int i = 0; i < k; ++i)
        q[static_cast<size_t>(n_old) + bi * static_cast<size_t>(k) + static_cast<size_t>(i)] =
            n_old + static_cast<int>(img_pos) * k + i;
    }
    return q;
  };
  out.witness = verify_homomorphic_image(before, after, lift, "pad_chain");
  return out;
}

namespace {

// length-then-lexicographic index of a bit string of length < depth
int prefix_index(const std::string& s) {
  int base = (1 << s.size()) - 1;
  int val = 0;
  for (char c : s) val = val * 2 + (c - '0');
  return base + val;
}

}  // namespace

RigidComb rigid_comb(int depth, std::vector<Rat> radii) {
  if (depth < 1) throw Error(ErrorClass::InvalidInput, "comb depth must be at least 1");
  if (depth > 16) throw Error(ErrorClass::TooLarge, "comb depth " + std::to_string(depth));
  int prefixes = (1 << depth) - 1;
  if (static_cast<int>(radii.size()) != prefixes)
    throw Error(ErrorClass::InvalidInput,
                "need " + std::to_string(prefixes) + " radii for depth " + std::to_string(depth));
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > Rat(0)))
      throw Error(ErrorClass::InvalidInput, "radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw Error(ErrorClass::InvalidInput, "radii must be strictly decreasing");
  }
  RigidComb c;
  c.depth = depth;
  c.radii = std::move(radii);
  for (int v = 0; v < (1 << depth); ++v) {
    std::string s;
    for (int b = depth - 1; b >= 0; --b) s += ((v >> b) & 1) ? '1' : '0';
    c.points.push_back(s);
  }
  return c;
}

std::vector<Rat> default_radii(int depth, const Rat& below) {
  std::vector<Rat> out;
  Rat cur = below / Rat(2);
  for (int i = 0; i < (1 << depth) - 1; ++i) {
    out.push_back(cur);
    cur = cur / Rat(2);
  }
  return out;
}

UltraSpace comb_space(const RigidComb& comb) {
  int n = static_cast<int>(comb.points.size());
  std::vector<std::vector<Rat>> dist(static_cast<size_t>(n),
                                     std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      std::string lcp;
      const std::string& x = comb.points[static_cast<size_t>(a)];
      const std::string& y = comb.points[static_cast<size_t>(b)];
      for (size_t i = 0; i < x.size() && x[i] == y[i]; ++i) lcp += x[i];
      dist[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          comb.radii[static_cast<size_t>(prefix_index(lcp))];
    }
  UltraSpace u{GroundSet(comb.points), std::move(dist)};
  ValidationReport rep = validate_space(u);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidInput,
                "internal: comb metric is not ultrametric: " + rep.violations.front());
  return u;
}

UltraSpace comb_product(const UltraSpace& u, const RigidComb& comb) {
  std::vector<Rat> dset = distance_set(u);
  if (!dset.empty() && !(comb.radii.front() < dset.front()))
    throw Error(ErrorClass::RadiiTooLarge, "largest radius " + comb.radii.front().str() +
                                               " reaches the minimal distance " +
                                               dset.front().str());
  UltraSpace cu = comb_space(comb);
  int np = u.size(), nc = cu.size();
  std::vector<std::string> names;
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < nc; ++y) names.push_back(u.points.name(x) + ":" + cu.points.name(y));
  int n = np * nc;
  std::vector<std::vector<Rat>> dist(static_cast<size_t>(n),
                                     std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      int xa = a / nc, ya = a % nc, xb = b / nc, yb = b % nc;
      dist[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          xa != xb ? u.d(xa, xb) : cu.d(ya, yb);
    }
  UltraSpace out{GroundSet(std::move(names)), std::move(dist)};
  ValidationReport rep = validate_space(out);
  if (!rep.ok())
    throw Error(ErrorClass::InvalidInput,
                "internal: product metric is not ultrametric: " + rep.violations.front());
  return out;
}

}  // namespace umw
