#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nptlab/constructions.hpp"
#include "nptlab/distill.hpp"
#include "nptlab/geometry.hpp"
#include "nptlab/nullspace.hpp"
#include "nptlab/qcore.hpp"

// Artifact (de)serialization. Emission uses ordered_json with fixed insertion
// order so identical runs produce byte-identical files.
namespace nptlab::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

ojson to_json(const ComplexOperator& op);
ComplexOperator operator_from_json(const json& j);

ojson to_json(const BipartitePureState& psi);
BipartitePureState state_from_json(const json& j);

ojson to_json(const constructions::ConstructionSpec& spec);
constructions::ConstructionSpec spec_from_json(const json& j);

ojson to_json(const distill::SeesawResult& res);
ojson to_json(const distill::ThresholdReport& rep);
ojson to_json(const nullspace::RankCheckReport& rep);
ojson to_json(const geometry::GeometryReport& rep);
ojson to_json(const qcore::PptResult& res, double tol);

// Minimal JSON-Schema checker covering the subset the shipped schemas use:
// type, properties, required, items, enum. Returns human-readable problems,
// empty when the document conforms.
std::vector<std::string> validate_schema(const json& schema, const json& doc);

// Reads and parses; wraps parse failures in PreconditionError with position
// diagnostics.
json read_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal, deterministic ("%.17g" trimmed by to_chars).
std::string format_double(double v);

}  // namespace nptlab::io
