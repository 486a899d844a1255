#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "floc/analysis.hpp"
#include "floc/audit.hpp"
#include "floc/geometry.hpp"
#include "floc/oracle.hpp"

namespace floc {

using Json = nlohmann::ordered_json;

// Instance file schema, one object for both spaces:
//   {"metric": {"kind": "line"} | {"kind": "l2p", "p": 2.0},
//    "agents": [[0.0], [2.0]] | [[0.0, 0.0], [2.0, 2.0]],
//    "prediction": [1.0]}
// 1-D points serialize as single-element arrays so the schema is uniform.
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// Canonical text: 2-space indent, LF endings, trailing newline. Parsing a
// canonical file and serializing again is byte-identical.
std::string serialize_instance(const Instance& instance);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);

Json point_to_json(const Point& pt);
Json outcome_to_json(const Outcome& outcome);
Json error_value_to_json(const ErrorValue& eta);
Json ratio_report_to_json(const RatioReport& report);
Json oracle_result_to_json(const OracleResult& result);
Json deviation_to_json(const Deviation& deviation);
Json audit_report_to_json(const AuditReport& report);

// Locale-free shortest round-trip formatting. NaN renders as an empty field
// (0-trial sweeps emit empty observation columns), infinities as "inf".
std::string format_double(double v);

// Sweep CSV: fixed columns
//   mechanism,q,p,eta,worst_ratio,mean_ratio,bound,trials,seed
// with '.' decimals, LF line endings and the header always present. q is
// empty for non-mixtures and p is empty on the line.
std::string curve_csv(const MechanismSpec& spec, const MetricSpec& metric,
                      std::span<const CurvePoint> curve, std::uint64_t seed);
Json curve_to_json(const MechanismSpec& spec, const MetricSpec& metric,
                   std::span<const CurvePoint> curve, std::uint64_t seed);

}  // namespace floc
