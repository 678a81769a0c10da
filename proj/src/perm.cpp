#include "umw/perm.hpp"

#include <algorithm>
#include <set>

#include "umw/error.hpp"

namespace umw {

Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  return p;
}

Perm compose(const Perm& f, const Perm& g) {
  Perm r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = f[static_cast<size_t>(g[i])];
  return r;
}

Perm inverse(const Perm& f) {
  Perm r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[static_cast<size_t>(f[i])] = static_cast<int>(i);
  return r;
}

bool is_permutation(const Perm& f) {
  std::vector<bool> seen(f.size(), false);
  for (int v : f) {
    if (v < 0 || v >= static_cast<int>(f.size()) || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

std::string perm_str(const GroundSet& ground, const Perm& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += ground.name(p[i]);
  }
  return s + "]";
}

bool PermGroup::contains(const Perm& p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

PermGroup make_group(GroundSet ground, std::vector<Perm> elements,
                     std::vector<Perm> generators) {
  Perm id = identity_perm(ground.size());
  elements.push_back(id);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return PermGroup{std::move(ground), std::move(elements), std::move(generators)};
}

PermGroup trivial_group(GroundSet ground) {
  return make_group(std::move(ground), {});
}

PermGroup symmetric_group(GroundSet ground, long long max_order) {
  int n = ground.size();
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm swap01 = identity_perm(n);
    std::swap(swap01[0], swap01[1]);
    gens.push_back(swap01);
    Perm cyc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<size_t>(i)] = (i + 1) % n;
    gens.push_back(cyc);
  }
  return closure(ground, gens, max_order);
}

PermGroup closure(const GroundSet& ground, const std::vector<Perm>& generators,
                  long long max_order) {
  int n = ground.size();
  for (const Perm& g : generators) {
    if (static_cast<int>(g.size()) != n)
      throw Error(ErrorClass::DomainMismatch,
                  "generator degree " + std::to_string(g.size()) +
                      " does not match ground size " + std::to_string(n));
    if (!is_permutation(g))
      throw Error(ErrorClass::InvalidInput, "generator is not a bijection");
  }

  std::set<Perm> seen;
  std::vector<Perm> frontier;
  seen.insert(identity_perm(n));
  frontier.push_back(identity_perm(n));

  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const Perm& g : generators) {
        Perm q = compose(g, p);
        if (seen.insert(q).second) {
          if (static_cast<long long>(seen.size()) > max_order)
            throw Error(ErrorClass::OrderGuardExceeded,
                        "closure exceeds max_order " + std::to_string(max_order));
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<Perm> elems(seen.begin(), seen.end());
  return PermGroup{ground, std::move(elems), generators};
}

std::vector<std::vector<int>> orbits(const PermGroup& g) {
  int n = g.ground.size();
  std::vector<int> owner(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (owner[static_cast<size_t>(x)] >= 0) continue;
    std::vector<int> orb;
    std::vector<int> stack{x};
    owner[static_cast<size_t>(x)] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      orb.push_back(y);
      for (const Perm& p : g.elements) {
        int z = p[static_cast<size_t>(y)];
        if (owner[static_cast<size_t>(z)] < 0) {
          owner[static_cast<size_t>(z)] = static_cast<int>(out.size());
          stack.push_back(z);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool is_transitive(const PermGroup& g, const std::vector<int>& block) {
  if (block.empty())
    throw Error(ErrorClass::InvalidInput, "transitivity of an empty block");
  std::set<int> in(block.begin(), block.end());
  for (const Perm& p : g.elements)
    for (int x : block)
      if (!in.count(p[static_cast<size_t>(x)]))
        throw Error(ErrorClass::NotInvariant,
                    "block is not invariant: " + g.ground.name(x) + " leaves under " +
                        perm_str(g.ground, p));
  // single orbit of the restricted action
  std::set<int> reached{block[0]};
  std::vector<int> stack{block[0]};
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    for (const Perm& p : g.elements) {
      int z = p[static_cast<size_t>(y)];
      if (!reached.count(z)) {
        reached.insert(z);
        stack.push_back(z);
      }
    }
  }
  return reached.size() == in.size();
}

bool is_transitive(const PermGroup& g) {
  std::vector<int> all(static_cast<size_t>(g.ground.size()));
  for (int i = 0; i < g.ground.size(); ++i) all[static_cast<size_t>(i)] = i;
  return is_transitive(g, all);
}

PermGroup stabilizer(const PermGroup& g, int x) {
  if (x < 0 || x >= g.ground.size())
    throw Error(ErrorClass::UnknownElement, "stabilizer of out-of-range index");
  std::vector<Perm> elems;
  for (const Perm& p : g.elements)
    if (p[static_cast<size_t>(x)] == x) elems.push_back(p);
  return PermGroup{g.ground, std::move(elems), {}};
}

PermGroup stabilizer(const PermGroup& g, const std::string& name) {
  return stabilizer(g, g.ground.index(name));
}

IsoWitness verify_conjugation(const PermGroup& g, const PermGroup& h,
                              const std::vector<int>& bij, const std::string& label) {
  IsoWitness w;
  w.label = label;
  w.source_order = g.order();
  w.target_order = h.order();

  if (static_cast<int>(bij.size()) != g.ground.size() ||
      g.ground.size() != h.ground.size() || !is_permutation(bij)) {
    w.failure = "map is not a bijection between the two ground sets";
    return w;
  }
  if (g.order() != h.order()) {
    w.failure = "orders differ: " + std::to_string(g.order()) + " vs " +
                std::to_string(h.order());
    return w;
  }
  Perm binv = inverse(bij);
  for (const Perm& p : g.elements) {
    Perm conj = compose(bij, compose(p, binv));
    if (!h.contains(conj)) {
      w.failure = "conjugate of " + perm_str(g.ground, p) + " is not in the target group";
      return w;
    }
  }
  // Conjugation is injective and order-preserving, so landing inside the
  // target with equal orders makes the map onto.
  w.verified = true;
  return w;
}

IsoWitness verify_homomorphic_image(const PermGroup& g, const PermGroup& h,
                                    const std::function<Perm(const Perm&)>& lift,
                                    const std::string& label) {
  IsoWitness w;
  w.label = label;
  w.source_order = g.order();
  w.target_order = h.order();

  std::set<Perm> image;
  std::vector<Perm> lifted;
  lifted.reserve(g.elements.size());
  for (const Perm& p : g.elements) {
    Perm q = lift(p);
    if (static_cast<int>(q.size()) != h.ground.size() || !is_permutation(q)) {
      w.failure = "lift of " + perm_str(g.ground, p) + " is not a permutation of the target set";
      return w;
    }
    if (!h.contains(q)) {
      w.failure = "lift of " + perm_str(g.ground, p) + " is not in the target group";
      return w;
    }
    if (!image.insert(q).second) {
      w.failure = "lift is not injective at " + perm_str(g.ground, p);
      return w;
    }
    lifted.push_back(std::move(q));
  }
  if (static_cast<long long>(image.size()) != h.order()) {
    w.failure = "lift is not onto: image order " + std::to_string(image.size()) +
                " vs target order " + std::to_string(h.order());
    return w;
  }
  // Homomorphism check: all pairs when small, generator products otherwise.
  const std::vector<Perm>& probes =
      (!g.generators.empty() && g.order() > 64) ? g.generators : g.elements;
  for (size_t i = 0; i < g.elements.size(); ++i) {
    for (const Perm& q : probes) {
      Perm prod = compose(g.elements[i], q);
      if (lift(prod) != compose(lifted[i], lift(q))) {
        w.failure = "lift is not multiplicative at " + perm_str(g.ground, g.elements[i]) +
                    " * " + perm_str(g.ground, q);
        return w;
      }
    }
  }
  w.verified = true;
  return w;
}

}  // namespace umw
