#include "umw/ltree.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "umw/error.hpp"
#include "umw/sym_filter.hpp"

namespace umw {

int LinearOrder::index_of(const Rat& r) const {
  for (int i = 0; i < size(); ++i)
    if (labels[static_cast<size_t>(i)] == r) return i;
  throw Error(ErrorClass::UnknownElement, "no level '" + r.str() + "'");
}

bool LinearOrder::contains(const Rat& r) const {
  for (const Rat& l : labels)
    if (l == r) return true;
  return false;
}

LinearOrder make_order(std::vector<Rat> labels) {
  if (labels.empty()) throw Error(ErrorClass::SchemaError, "empty level order");
  for (size_t i = 1; i < labels.size(); ++i)
    if (!(labels[i - 1] < labels[i]))
      throw Error(ErrorClass::SchemaError, "levels not strictly ascending");
  return LinearOrder{std::move(labels)};
}

LTree make_ltree(LinearOrder order, GroundSet nodes, std::vector<int> level,
                 std::vector<int> parent) {
  LTree t;
  t.order = std::move(order);
  t.nodes = std::move(nodes);
  t.level = std::move(level);
  t.parent = std::move(parent);

  int n = t.nodes.size();
  int levels = t.order.size();
  if (static_cast<int>(t.level.size()) != n || static_cast<int>(t.parent.size()) != n)
    throw Error(ErrorClass::SchemaError, "node/level/parent arrays disagree in length");
  for (int v = 0; v < n; ++v) {
    int lv = t.level[static_cast<size_t>(v)];
    if (lv < 0 || lv >= levels)
      throw Error(ErrorClass::SchemaError, "node level out of range");
    int p = t.parent[static_cast<size_t>(v)];
    if (lv == levels - 1) {
      if (p != -1)
        throw Error(ErrorClass::SchemaError,
                    "top-level node '" + t.nodes.name(v) + "' has a parent");
    } else {
      if (p < 0 || p >= n)
        throw Error(ErrorClass::SchemaError,
                    "node '" + t.nodes.name(v) + "' below the top level has no parent");
      if (t.level[static_cast<size_t>(p)] != lv + 1)
        throw Error(ErrorClass::SchemaError,
                    "parent of '" + t.nodes.name(v) + "' skips a level");
    }
  }

  t.up_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(levels), -1));
  for (int v = 0; v < n; ++v) {
    int cur = v;
    for (int l = t.level[static_cast<size_t>(v)]; l < levels; ++l) {
      if (cur == -1) throw Error(ErrorClass::SchemaError, "broken parent chain");
      t.up_[static_cast<size_t>(v)][static_cast<size_t>(l)] = cur;
      cur = t.parent[static_cast<size_t>(cur)];
    }
    if (cur != -1) throw Error(ErrorClass::SchemaError, "parent chain overruns the top level");
  }
  return t;
}

int LTree::up(int t, int level_index) const {
  if (level_index < 0 || level_index >= order.size()) return -1;
  return up_[static_cast<size_t>(t)][static_cast<size_t>(level_index)];
}

bool LTree::le(int t, int s) const {
  int ls = level[static_cast<size_t>(s)];
  if (ls < level[static_cast<size_t>(t)]) return false;
  return up(t, ls) == s;
}

bool LTree::comparable(int t, int s) const { return le(t, s) || le(s, t); }

std::vector<int> LTree::level_nodes(int level_index) const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (level[static_cast<size_t>(v)] == level_index) out.push_back(v);
  return out;
}

ValidationReport validate_ltree(const LTree& t) {
  ValidationReport rep;
  int levels = t.order.size();

  for (int l = 0; l < levels; ++l)
    if (t.level_nodes(l).empty())
      rep.violations.push_back("no node at level " + t.order.label(l).str());

  for (int v = 0; v < t.size(); ++v) {
    if (t.up(v, t.level[static_cast<size_t>(v)]) != v)
      rep.violations.push_back("up(" + t.nodes.name(v) + ", own level) != itself");
    for (int l = t.level[static_cast<size_t>(v)]; l < levels; ++l)
      for (int l2 = l; l2 < levels; ++l2)
        if (t.up(t.up(v, l), l2) != t.up(v, l2))
          rep.violations.push_back("ancestor coherence fails at " + t.nodes.name(v));
  }

  for (int v = 0; v < t.size(); ++v)
    for (int w = 0; w < t.size(); ++w)
      if (v != w && t.le(v, w) && !(t.level[static_cast<size_t>(v)] < t.level[static_cast<size_t>(w)]))
        rep.violations.push_back("order does not raise levels at (" + t.nodes.name(v) + "," +
                                 t.nodes.name(w) + ")");

  // common upper bound; with a finite order this forces a single top node
  for (int v = 0; v < t.size(); ++v)
    for (int w = v + 1; w < t.size(); ++w) {
      bool found = false;
      for (int l = 0; l < levels && !found; ++l)
        if (t.up(v, l) >= 0 && t.up(v, l) == t.up(w, l)) found = true;
      if (!found)
        rep.violations.push_back("no common upper bound for (" + t.nodes.name(v) + "," +
                                 t.nodes.name(w) + ")");
    }

  // splitting levels: for incomparable pairs the difference set is nonempty
  // and has a maximum (automatic when finite, still checked literally)
  for (int v = 0; v < t.size(); ++v)
    for (int w = v + 1; w < t.size(); ++w) {
      if (t.comparable(v, w)) continue;
      std::vector<int> diff;
      int base = std::max(t.level[static_cast<size_t>(v)], t.level[static_cast<size_t>(w)]);
      for (int l = base; l < levels; ++l)
        if (t.up(v, l) != t.up(w, l)) diff.push_back(l);
      if (diff.empty())
        rep.violations.push_back("incomparable pair with no splitting level: (" +
                                 t.nodes.name(v) + "," + t.nodes.name(w) + ")");
    }
  return rep;
}

int split_level_index(const LTree& tr, int t, int s) {
  if (tr.comparable(t, s))
    throw Error(ErrorClass::Comparable, "splitting level of comparable nodes (" +
                                            tr.nodes.name(t) + "," + tr.nodes.name(s) + ")");
  int best = -1;
  int base = std::max(tr.level[static_cast<size_t>(t)], tr.level[static_cast<size_t>(s)]);
  for (int l = base; l < tr.order.size(); ++l)
    if (tr.up(t, l) != tr.up(s, l)) best = l;
  return best;
}

Rat split_level(const LTree& tr, int t, int s) {
  return tr.order.label(split_level_index(tr, t, s));
}

std::vector<Branch> branches(const LTree& t) {
  std::vector<Branch> out;
  for (int v : t.level_nodes(0)) {
    Branch b(static_cast<size_t>(t.order.size()));
    for (int l = 0; l < t.order.size(); ++l) b[static_cast<size_t>(l)] = t.up(v, l);
    out.push_back(std::move(b));
  }
  return out;
}

bool is_pruned(const LTree& t) {
  std::vector<bool> on_branch(static_cast<size_t>(t.size()), false);
  for (int v : t.level_nodes(0))
    for (int l = 0; l < t.order.size(); ++l) on_branch[static_cast<size_t>(t.up(v, l))] = true;
  for (int v = 0; v < t.size(); ++v)
    if (!on_branch[static_cast<size_t>(v)]) return false;
  return true;
}

LTree restrict_tree(const LTree& t, const Rat& min_label) {
  int cut = -1;
  for (int l = 0; l < t.order.size(); ++l)
    if (t.order.label(l) == min_label) cut = l;
  if (cut < 0) throw Error(ErrorClass::UnknownElement, "no level '" + min_label.str() + "'");

  std::vector<Rat> labels(t.order.labels.begin() + cut, t.order.labels.end());
  std::vector<std::string> names;
  std::vector<int> keep;
  std::vector<int> newidx(static_cast<size_t>(t.size()), -1);
  for (int v = 0; v < t.size(); ++v)
    if (t.level[static_cast<size_t>(v)] >= cut) {
      newidx[static_cast<size_t>(v)] = static_cast<int>(keep.size());
      keep.push_back(v);
      names.push_back(t.nodes.name(v));
    }
  std::vector<int> level, parent;
  for (int v : keep) {
    level.push_back(t.level[static_cast<size_t>(v)] - cut);
    int p = t.parent[static_cast<size_t>(v)];
    parent.push_back(p == -1 ? -1 : newidx[static_cast<size_t>(p)]);
  }
  return make_ltree(make_order(std::move(labels)), GroundSet(std::move(names)),
                    std::move(level), std::move(parent));
}

namespace {

bool is_tree_automorphism(const LTree& t, const Perm& p) {
  for (int v = 0; v < t.size(); ++v) {
    if (t.level[static_cast<size_t>(p[static_cast<size_t>(v)])] != t.level[static_cast<size_t>(v)])
      return false;
    int par = t.parent[static_cast<size_t>(v)];
    int ppar = t.parent[static_cast<size_t>(p[static_cast<size_t>(v)])];
    if (par == -1) {
      if (ppar != -1) return false;
    } else if (ppar != p[static_cast<size_t>(par)]) {
      return false;
    }
  }
  return true;
}

// Unordered subtree shape, refined per level; equal shapes are necessary for
// two nodes to be exchangeable.
std::vector<long long> shape_hashes(const LTree& t) {
  int n = t.size();
  std::vector<std::vector<int>> children(static_cast<size_t>(n));
  std::vector<int> tops;
  for (int v = 0; v < n; ++v) {
    int p = t.parent[static_cast<size_t>(v)];
    if (p >= 0)
      children[static_cast<size_t>(p)].push_back(v);
    else
      tops.push_back(v);
  }
  std::vector<long long> shape(static_cast<size_t>(n), 0);
  std::map<std::pair<int, std::vector<long long>>, long long> dict;
  // nodes in ascending level order so children are done first
  std::vector<int> by_level(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) by_level[static_cast<size_t>(i)] = i;
  std::sort(by_level.begin(), by_level.end(), [&](int a, int b) {
    return t.level[static_cast<size_t>(a)] < t.level[static_cast<size_t>(b)];
  });
  for (int v : by_level) {
    std::vector<long long> kid;
    for (int c : children[static_cast<size_t>(v)]) kid.push_back(shape[static_cast<size_t>(c)]);
    std::sort(kid.begin(), kid.end());
    auto key = std::make_pair(t.level[static_cast<size_t>(v)], kid);
    auto it = dict.find(key);
    if (it == dict.end()) it = dict.emplace(key, static_cast<long long>(dict.size()) + 1).first;
    shape[static_cast<size_t>(v)] = it->second;
  }
  return shape;
}

void aut_backtrack(const LTree& t, const std::vector<int>& order_of_nodes,
                   const std::vector<long long>& shape, Perm& partial,
                   std::vector<bool>& used, size_t pos, std::vector<Perm>& out,
                   long long max_order) {
  if (pos == order_of_nodes.size()) {
    out.push_back(partial);
    if (static_cast<long long>(out.size()) > max_order)
      throw Error(ErrorClass::OrderGuardExceeded,
                  "automorphism group exceeds max_order " + std::to_string(max_order));
    return;
  }
  int v = order_of_nodes[pos];
  int par = t.parent[static_cast<size_t>(v)];
  for (int img = 0; img < t.size(); ++img) {
    if (used[static_cast<size_t>(img)]) continue;
    if (t.level[static_cast<size_t>(img)] != t.level[static_cast<size_t>(v)]) continue;
    if (shape[static_cast<size_t>(img)] != shape[static_cast<size_t>(v)]) continue;
    if (par >= 0) {
      if (t.parent[static_cast<size_t>(img)] != partial[static_cast<size_t>(par)]) continue;
    } else if (t.parent[static_cast<size_t>(img)] != -1) {
      continue;
    }
    partial[static_cast<size_t>(v)] = img;
    used[static_cast<size_t>(img)] = true;
    aut_backtrack(t, order_of_nodes, shape, partial, used, pos + 1, out, max_order);
    used[static_cast<size_t>(img)] = false;
  }
}

}  // namespace

PermGroup aut_group(const LTree& t, long long max_order) {
  int n = t.size();
  std::vector<int> order_of_nodes(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order_of_nodes[static_cast<size_t>(i)] = i;
  std::sort(order_of_nodes.begin(), order_of_nodes.end(), [&](int a, int b) {
    if (t.level[static_cast<size_t>(a)] != t.level[static_cast<size_t>(b)])
      return t.level[static_cast<size_t>(a)] > t.level[static_cast<size_t>(b)];
    return a < b;
  });
  std::vector<long long> shape = shape_hashes(t);
  std::vector<Perm> elems;
  Perm partial(static_cast<size_t>(n), -1);
  std::vector<bool> used(static_cast<size_t>(n), false);
  aut_backtrack(t, order_of_nodes, shape, partial, used, 0, elems, max_order);
  std::sort(elems.begin(), elems.end());

  for (const Perm& p : elems)
    if (!is_tree_automorphism(t, p))
      throw Error(ErrorClass::InvalidInput, "internal: search produced a non-automorphism");
  return PermGroup{t.nodes, std::move(elems), {}};
}

PermGroup aut_group_brute(const LTree& t) {
  auto elems = filter_sym(t.size(), [&](const Perm& p) { return is_tree_automorphism(t, p); });
  return PermGroup{t.nodes, std::move(elems), {}};
}

CondensedTree condense(const LTree& t, long long max_order) {
  PermGroup aut = aut_group(t, max_order);
  std::vector<std::vector<int>> orbs = orbits(aut);
  // canonical class order: by (level, least member)
  std::sort(orbs.begin(), orbs.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    int la = t.level[static_cast<size_t>(a[0])], lb = t.level[static_cast<size_t>(b[0])];
    if (la != lb) return la < lb;
    return a[0] < b[0];
  });

  int k = static_cast<int>(orbs.size());
  std::vector<int> class_of(static_cast<size_t>(t.size()), -1);
  std::vector<std::string> names;
  std::vector<int> qlevel;
  for (int c = 0; c < k; ++c) {
    names.push_back("d" + std::to_string(c + 1));
    qlevel.push_back(t.level[static_cast<size_t>(orbs[static_cast<size_t>(c)][0])]);
    for (int v : orbs[static_cast<size_t>(c)]) class_of[static_cast<size_t>(v)] = c;
  }
  // quotient levels may skip indices of the original order only if some level
  // vanished, which cannot happen (classes preserve levels, levels are
  // inhabited); parents are induced representative-wise.
  std::vector<int> qparent(static_cast<size_t>(k), -1);
  for (int c = 0; c < k; ++c) {
    int rep = orbs[static_cast<size_t>(c)][0];
    int p = t.parent[static_cast<size_t>(rep)];
    qparent[static_cast<size_t>(c)] = p == -1 ? -1 : class_of[static_cast<size_t>(p)];
    // induced parent must not depend on the representative
    for (int v : orbs[static_cast<size_t>(c)]) {
      int pv = t.parent[static_cast<size_t>(v)];
      int got = pv == -1 ? -1 : class_of[static_cast<size_t>(pv)];
      if (got != qparent[static_cast<size_t>(c)])
        throw Error(ErrorClass::InvalidInput, "internal: quotient parent not class-invariant");
    }
  }
  LTree q = make_ltree(t.order, GroundSet(std::move(names)), std::move(qlevel),
                       std::move(qparent));
  return CondensedTree{std::move(q), std::move(class_of), std::move(orbs)};
}

std::vector<int> level_cluster(const LTree& t, const PermGroup& aut, int node) {
  std::vector<int> out{node};
  for (const Perm& p : aut.elements) {
    int s = p[static_cast<size_t>(node)];
    if (s == node) continue;
    if (t.comparable(node, s)) continue;
    if (split_level_index(t, node, s) == t.level[static_cast<size_t>(node)])
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> cluster_sizes(const LTree& t, const PermGroup& aut,
                                     const CondensedTree& c) {
  std::vector<long long> n(static_cast<size_t>(c.tree.size()), 0);
  for (int cls = 0; cls < c.tree.size(); ++cls) {
    long long size = -1;
    for (int v : c.members[static_cast<size_t>(cls)]) {
      long long s = static_cast<long long>(level_cluster(t, aut, v).size());
      if (size < 0) size = s;
      if (s != size)
        throw Error(ErrorClass::InvalidInput,
                    "cluster size is not constant on class " + c.tree.nodes.name(cls));
    }
    n[static_cast<size_t>(cls)] = size;
  }
  return n;
}

bool is_special(const LTree& t) { return validate_ltree(condense(t).tree).ok(); }

bool is_homogeneous_tree(const LTree& t) {
  CondensedTree c = condense(t);
  for (int a = 0; a < c.tree.size(); ++a)
    for (int b = a + 1; b < c.tree.size(); ++b)
      if (!c.tree.comparable(a, b)) return false;
  return true;
}

Branch lift_branch(const LTree& t, const CondensedTree& c, const Branch& b, int at,
                   int node) {
  if (static_cast<int>(b.size()) != t.order.size())
    throw Error(ErrorClass::InvalidInput, "branch does not span the level order");
  if (c.class_of[static_cast<size_t>(node)] != b[static_cast<size_t>(at)])
    throw Error(ErrorClass::NotInClass,
                "node '" + t.nodes.name(node) + "' is not in the branch class at that level");
  // any bottom-level descendant of `node` in the class b(0) determines the
  // lift; intermediate classes are then forced
  for (int s : t.level_nodes(0)) {
    if (t.up(s, at) != node) continue;
    if (c.class_of[static_cast<size_t>(s)] != b[0]) continue;
    Branch out(static_cast<size_t>(t.order.size()));
    bool ok = true;
    for (int l = 0; l < t.order.size() && ok; ++l) {
      out[static_cast<size_t>(l)] = t.up(s, l);
      if (c.class_of[static_cast<size_t>(t.up(s, l))] != b[static_cast<size_t>(l)]) ok = false;
    }
    if (ok) return out;
  }
  throw Error(ErrorClass::NotInClass, "no compatible lift exists");
}

PushdownResult pushdown_property(const LTree& t, long long max_order) {
  PermGroup aut = aut_group(t, max_order);
  CondensedTree c = condense(t, max_order);
  for (int t0 = 0; t0 < t.size(); ++t0) {
    // chains are up-closures of single nodes; proper means something lies
    // strictly below the minimum
    bool proper = false;
    for (int w = 0; w < t.size() && !proper; ++w)
      if (w != t0 && t.le(w, t0)) proper = true;
    if (!proper) continue;
    for (int v = 0; v < t.size(); ++v) {
      if (!c.tree.le(c.class_of[static_cast<size_t>(v)], c.class_of[static_cast<size_t>(t0)]))
        continue;
      bool found = false;
      for (const Perm& p : aut.elements)
        if (t.le(p[static_cast<size_t>(v)], t0)) {
          found = true;
          break;
        }
      if (!found) return PushdownResult{false, std::make_pair(t0, v)};
    }
  }
  return PushdownResult{true, std::nullopt};
}

}  // namespace umw
