#include "umw/io.hpp"

#include <fstream>
#include <sstream>

#include "umw/error.hpp"

namespace umw {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorClass::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorClass::ParseError, e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorClass::ParseError, "cannot write '" + path + "'");
  out << dump_canonical(j);
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

namespace {

Rat rat_field(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw Error(ErrorClass::SchemaError, "expected a rational as \"p/q\" or integer");
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key))
    throw Error(ErrorClass::SchemaError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw Error(ErrorClass::SchemaError, std::string("malformed field '") + key + "'");
  }
}

}  // namespace

Json space_to_json(const UltraSpace& u) {
  Json j;
  j["points"] = u.points.names();
  Json rows = Json::array();
  for (int x = 0; x < u.size(); ++x) {
    Json row = Json::array();
    for (int y = 0; y < u.size(); ++y) row.push_back(u.d(x, y).str());
    rows.push_back(row);
  }
  j["dist"] = rows;
  return j;
}

UltraSpace space_from_json(const Json& j) {
  auto points = field<std::vector<std::string>>(j, "points");
  if (!j.contains("dist") || !j.at("dist").is_array())
    throw Error(ErrorClass::SchemaError, "missing distance matrix");
  std::vector<std::vector<Rat>> dist;
  for (const Json& row : j.at("dist")) {
    std::vector<Rat> r;
    for (const Json& cell : row) r.push_back(rat_field(cell));
    dist.push_back(std::move(r));
  }
  return make_space(std::move(points), std::move(dist));
}

Json tree_to_json(const LTree& t) {
  Json j;
  Json levels = Json::array();
  for (const Rat& l : t.order.labels) levels.push_back(l.str());
  j["levels"] = levels;
  Json nodes = Json::array();
  for (int v = 0; v < t.size(); ++v) {
    Json n;
    n["id"] = t.nodes.name(v);
    n["level"] = t.level[static_cast<size_t>(v)];
    int p = t.parent[static_cast<size_t>(v)];
    if (p == -1)
      n["parent"] = nullptr;
    else
      n["parent"] = t.nodes.name(p);
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  return j;
}

LTree tree_from_json(const Json& j) {
  std::vector<Rat> labels;
  for (const Json& l : j.contains("levels") ? j.at("levels") : Json::array())
    labels.push_back(rat_field(l));
  if (labels.empty()) throw Error(ErrorClass::SchemaError, "tree file without levels");
  if (!j.contains("nodes") || !j.at("nodes").is_array())
    throw Error(ErrorClass::SchemaError, "tree file without nodes");

  std::vector<std::string> names;
  std::vector<int> level;
  std::vector<std::string> parents;
  for (const Json& n : j.at("nodes")) {
    names.push_back(field<std::string>(n, "id"));
    level.push_back(field<int>(n, "level"));
    if (!n.contains("parent") || n.at("parent").is_null())
      parents.push_back("");
    else
      parents.push_back(n.at("parent").get<std::string>());
  }
  GroundSet nodes(names);
  std::vector<int> parent;
  for (const std::string& p : parents)
    parent.push_back(p.empty() ? -1 : nodes.index(p));
  return make_ltree(make_order(std::move(labels)), std::move(nodes), std::move(level),
                    std::move(parent));
}

LinearOrder order_from_string(const std::string& csv) {
  return make_order(rats_from_string(csv));
}

std::vector<Rat> rats_from_string(const std::string& csv) {
  std::vector<Rat> out;
  std::string cur;
  std::stringstream ss(csv);
  while (std::getline(ss, cur, ','))
    if (!cur.empty()) out.push_back(Rat::parse(cur));
  if (out.empty()) throw Error(ErrorClass::ParseError, "empty rational list '" + csv + "'");
  return out;
}

Json skeleton_to_json(const Skeleton& sk) {
  Json j;
  j["elements"] = sk.delta.elems.names();
  Json le = Json::array();
  for (int a = 0; a < sk.size(); ++a)
    for (int b = 0; b < sk.size(); ++b)
      if (a != b && sk.delta.le(a, b))
        le.push_back(Json::array({sk.delta.elems.name(a), sk.delta.elems.name(b)}));
  j["le"] = le;
  Json arity;
  for (int d = 0; d < sk.size(); ++d)
    arity[sk.delta.elems.name(d)] = sk.N[static_cast<size_t>(d)];
  j["N"] = arity;
  if (sk.level) {
    Json levels;
    for (int d = 0; d < sk.size(); ++d)
      levels[sk.delta.elems.name(d)] = (*sk.level)[static_cast<size_t>(d)].str();
    j["levels"] = levels;
  }
  return j;
}

Skeleton skeleton_from_json(const Json& j) {
  auto names = field<std::vector<std::string>>(j, "elements");
  GroundSet elems(names);
  std::vector<std::pair<int, int>> pairs;
  if (j.contains("le"))
    for (const Json& p : j.at("le")) {
      if (!p.is_array() || p.size() != 2)
        throw Error(ErrorClass::SchemaError, "order pair is not a 2-element array");
      pairs.emplace_back(elems.index(p[0].get<std::string>()),
                         elems.index(p[1].get<std::string>()));
    }
  Skeleton sk;
  sk.delta = make_poset(std::move(elems), pairs);
  if (!j.contains("N")) throw Error(ErrorClass::SchemaError, "skeleton without arities");
  sk.N.resize(static_cast<size_t>(sk.size()), 0);
  for (auto it = j.at("N").begin(); it != j.at("N").end(); ++it)
    sk.N[static_cast<size_t>(sk.delta.elems.index(it.key()))] = it.value().get<long long>();
  for (long long nv : sk.N)
    if (nv < 1) throw Error(ErrorClass::SchemaError, "skeleton arity missing or nonpositive");
  if (j.contains("levels")) {
    std::vector<Rat> lv(static_cast<size_t>(sk.size()), Rat(0));
    std::vector<bool> got(static_cast<size_t>(sk.size()), false);
    for (auto it = j.at("levels").begin(); it != j.at("levels").end(); ++it) {
      int d = sk.delta.elems.index(it.key());
      lv[static_cast<size_t>(d)] = rat_field(it.value());
      got[static_cast<size_t>(d)] = true;
    }
    for (bool b : got)
      if (!b) throw Error(ErrorClass::SchemaError, "partial level map");
    sk.level = std::move(lv);
  }
  return sk;
}

Json seq_to_json(const Skeleton& sk, const Seq& z) {
  Json j;
  std::vector<int> up = sk.delta.up_set(z.base);
  for (size_t i = 0; i < up.size(); ++i) j[sk.delta.elems.name(up[i])] = z.vals[i];
  return j;
}

Seq seq_from_json(const Skeleton& sk, int base, const Json& j) {
  Seq z;
  z.base = base;
  std::vector<int> up = sk.delta.up_set(base);
  for (int g : up) {
    const std::string& key = sk.delta.elems.name(g);
    if (!j.contains(key))
      throw Error(ErrorClass::SchemaError, "sequence missing coordinate '" + key + "'");
    z.vals.push_back(j.at(key).get<int>());
  }
  if (j.size() != up.size())
    throw Error(ErrorClass::SchemaError, "sequence has coordinates off the up-set");
  return z;
}

Json system_to_json(const ProjectionSystem& ps) {
  Json j;
  j["skeleton"] = skeleton_to_json(ps.sk);
  Json family;
  for (int d = 0; d < ps.sk.size(); ++d) {
    Json arr = Json::array();
    for (const Seq& z : ps.parts[static_cast<size_t>(d)]) arr.push_back(seq_to_json(ps.sk, z));
    family[ps.sk.delta.elems.name(d)] = arr;
  }
  j["family"] = family;
  Json pi = Json::array();
  for (const auto& [key, table] : ps.pi) {
    auto [d, g] = key;
    if (d == g) continue;
    for (size_t zi = 0; zi < table.size(); ++zi) {
      const Seq& z = ps.parts[static_cast<size_t>(d)][zi];
      const Seq& img = ps.parts[static_cast<size_t>(g)][static_cast<size_t>(table[zi])];
      if (seq_restrict(ps.sk, z, g) == img) continue;  // restriction entries stay implicit
      Json entry;
      entry["delta"] = ps.sk.delta.elems.name(d);
      entry["gamma"] = ps.sk.delta.elems.name(g);
      entry["z"] = seq_to_json(ps.sk, z);
      entry["image"] = seq_to_json(ps.sk, img);
      pi.push_back(entry);
    }
  }
  j["pi"] = pi;
  return j;
}

ProjectionSystem system_from_json(const Json& j) {
  if (!j.contains("skeleton")) throw Error(ErrorClass::SchemaError, "system without skeleton");
  Skeleton sk = skeleton_from_json(j.at("skeleton"));

  ProjectionSystem ps;
  ps.sk = sk;
  ps.parts.resize(static_cast<size_t>(sk.size()));
  if (j.contains("family")) {
    for (int d = 0; d < sk.size(); ++d) {
      const std::string& key = sk.delta.elems.name(d);
      if (!j.at("family").contains(key))
        throw Error(ErrorClass::SchemaError, "family missing block '" + key + "'");
      std::vector<Seq> part;
      for (const Json& sj : j.at("family").at(key)) part.push_back(seq_from_json(sk, d, sj));
      std::sort(part.begin(), part.end());
      part.erase(std::unique(part.begin(), part.end()), part.end());
      ps.parts[static_cast<size_t>(d)] = std::move(part);
    }
  } else {
    for (int d = 0; d < sk.size(); ++d) ps.parts[static_cast<size_t>(d)] = all_seqs(sk, d);
  }

  // default: restrictions
  for (int d = 0; d < sk.size(); ++d)
    for (int g = 0; g < sk.size(); ++g) {
      if (!sk.delta.le(d, g)) continue;
      std::vector<int> table;
      for (const Seq& z : ps.parts[static_cast<size_t>(d)]) {
        Seq r = seq_restrict(sk, z, g);
        const auto& tgt = ps.parts[static_cast<size_t>(g)];
        auto it = std::lower_bound(tgt.begin(), tgt.end(), r);
        if (it == tgt.end() || !(*it == r))
          throw Error(ErrorClass::SchemaError,
                      "family is not closed under restriction at " + seq_name(sk, z));
        table.push_back(static_cast<int>(it - tgt.begin()));
      }
      ps.pi[{d, g}] = std::move(table);
    }
  if (j.contains("pi"))
    for (const Json& entry : j.at("pi")) {
      int d = sk.delta.elems.index(field<std::string>(entry, "delta"));
      int g = sk.delta.elems.index(field<std::string>(entry, "gamma"));
      if (!sk.delta.le(d, g))
        throw Error(ErrorClass::SchemaError, "projection entry over an unrelated pair");
      if (!entry.contains("z") || !entry.contains("image"))
        throw Error(ErrorClass::SchemaError, "projection entry without z/image");
      Seq z = seq_from_json(sk, d, entry.at("z"));
      Seq img = seq_from_json(sk, g, entry.at("image"));
      ps.pi[{d, g}][static_cast<size_t>(ps.seq_index(d, z))] = ps.seq_index(g, img);
    }
  return ps;
}

Json embedding_to_json(const LevelEmbedding& e) {
  Json pairs;
  for (int i = 0; i < e.order.size(); ++i)
    pairs[e.order.label(i).str()] =
        Json::array({e.lo[static_cast<size_t>(i)].str(), e.hi[static_cast<size_t>(i)].str()});
  Json j;
  j["pairs"] = pairs;
  return j;
}

LevelEmbedding embedding_from_json(const Json& j, const LinearOrder& order) {
  if (!j.contains("pairs")) throw Error(ErrorClass::SchemaError, "embedding without pairs");
  std::vector<Rat> lo(static_cast<size_t>(order.size())), hi(static_cast<size_t>(order.size()));
  std::vector<bool> got(static_cast<size_t>(order.size()), false);
  for (auto it = j.at("pairs").begin(); it != j.at("pairs").end(); ++it) {
    int idx = order.index_of(Rat::parse(it.key()));
    const Json& pair = it.value();
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorClass::SchemaError, "embedding pair is not a 2-element array");
    lo[static_cast<size_t>(idx)] = rat_field(pair[0]);
    hi[static_cast<size_t>(idx)] = rat_field(pair[1]);
    got[static_cast<size_t>(idx)] = true;
  }
  for (bool b : got)
    if (!b) throw Error(ErrorClass::SchemaError, "embedding does not cover every level");
  return make_embedding(order, std::move(lo), std::move(hi));
}

Json group_to_json(const PermGroup& g) {
  Json j;
  j["ground"] = g.ground.names();
  auto perm_json = [&](const Perm& p) {
    Json arr = Json::array();
    for (int v : p) arr.push_back(g.ground.name(v));
    return arr;
  };
  Json gens = Json::array();
  for (const Perm& p : g.generators) gens.push_back(perm_json(p));
  j["generators"] = gens;
  Json elems = Json::array();
  for (const Perm& p : g.elements) elems.push_back(perm_json(p));
  j["elements"] = elems;
  return j;
}

Json witness_to_json(const IsoWitness& w) {
  Json j;
  j["label"] = w.label;
  j["verified"] = w.verified;
  j["source_order"] = w.source_order;
  j["target_order"] = w.target_order;
  if (!w.verified) j["failure"] = w.failure;
  return j;
}

Json report_to_json(const TheoremReport& r, const std::string& input_digest) {
  Json j;
  j["pipeline"] = r.pipeline;
  j["verdict"] = r.verdict;
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["input_digest"] = input_digest;
  Json ws = Json::array();
  for (const IsoWitness& w : r.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = ws;
  Json orders = Json::object();
  for (auto& [k, v] : r.orders) orders[k] = v;
  j["orders"] = orders;
  Json notes = Json::object();
  for (auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = notes;
  Json times = Json::object();
  for (auto& [k, v] : r.timings_ms) times[k] = v;
  j["timings_ms"] = times;
  return j;
}

FileKind detect_kind(const Json& j) {
  if (!j.is_object()) return FileKind::Unknown;
  if (j.contains("points") && j.contains("dist")) return FileKind::Space;
  if (j.contains("nodes") && j.contains("levels")) return FileKind::Tree;
  if (j.contains("skeleton")) return FileKind::System;
  if (j.contains("elements") && j.contains("N")) return FileKind::Skeleton;
  if (j.contains("pairs")) return FileKind::Embedding;
  return FileKind::Unknown;
}

ValidationReport validate_any(const Json& j) {
  switch (detect_kind(j)) {
    case FileKind::Space:
      return validate_space(space_from_json(j));
    case FileKind::Tree:
      return validate_ltree(tree_from_json(j));
    case FileKind::Skeleton:
      return validate_skeleton(skeleton_from_json(j));
    case FileKind::System:
      return validate_projection_system(system_from_json(j));
    case FileKind::Embedding: {
      ValidationReport rep;
      rep.violations.push_back("embedding files validate against a level order");
      return rep;
    }
    case FileKind::Unknown:
      break;
  }
  throw Error(ErrorClass::SchemaError, "unrecognized file schema");
}

}  // namespace umw
