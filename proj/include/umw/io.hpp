#ifndef UMW_IO_HPP
#define UMW_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "umw/functors.hpp"
#include "umw/pipelines.hpp"
#include "umw/skeleton.hpp"
#include "umw/ultrametric.hpp"

namespace umw {

// Ordered JSON keeps object keys in insertion order, which together with the
// canonical orderings of the library makes every emitted file byte-stable.
using Json = nlohmann::ordered_json;

Json load_json(const std::string& path);
Json parse_json(const std::string& text);
void write_json(const std::string& path, const Json& j);
std::string dump_canonical(const Json& j);
std::string digest(const std::string& bytes);  // FNV-1a 64-bit, hex

// space files: { "points": [...], "dist": [["0","1"],...] }
Json space_to_json(const UltraSpace& u);
UltraSpace space_from_json(const Json& j);

// tree files: { "levels": ["1","2"], "nodes": [{"id","level","parent"},...] }
Json tree_to_json(const LTree& t);
LTree tree_from_json(const Json& j);

LinearOrder order_from_string(const std::string& csv);  // "1,2,3"
std::vector<Rat> rats_from_string(const std::string& csv);

// skeleton files: { "elements", "le", "N", "levels"? }
Json skeleton_to_json(const Skeleton& sk);
Skeleton skeleton_from_json(const Json& j);

// sequences as maps over the up-set: {"d2": 1, "d3": 0}
Json seq_to_json(const Skeleton& sk, const Seq& z);
Seq seq_from_json(const Skeleton& sk, int base, const Json& j);

// system files: { "skeleton", "family"?, "pi"? }; a missing family means the
// full product, missing projection entries default to restriction
Json system_to_json(const ProjectionSystem& ps);
ProjectionSystem system_from_json(const Json& j);

// embedding files: { "pairs": { "1": ["10","11"], ... } }
Json embedding_to_json(const LevelEmbedding& e);
LevelEmbedding embedding_from_json(const Json& j, const LinearOrder& order);

Json group_to_json(const PermGroup& g);
Json witness_to_json(const IsoWitness& w);
Json report_to_json(const TheoremReport& r, const std::string& input_digest);

enum class FileKind { Space, Tree, Skeleton, System, Embedding, Unknown };
FileKind detect_kind(const Json& j);

/// Runs the validator matching the detected schema; parse/shape breakage
/// surfaces as the corresponding error class.
ValidationReport validate_any(const Json& j);

}  // namespace umw

#endif
