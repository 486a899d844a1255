#include "floc/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace floc {

namespace {

// Numbers that may be infinite (eta, ratios) become the string "inf" in
// JSON, since JSON has no literal for it; NaN becomes null.
Json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return v;
}

Point point_from_json(const Json& j, int dim, const std::string& field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim))
    throw input_error("instance field '" + field + "' must be an array of " +
                      std::to_string(dim) + " coordinate(s)");
  for (const auto& c : j)
    if (!c.is_number()) throw input_error("instance field '" + field + "' has a non-numeric coordinate");
  if (dim == 1) return Point::line(j[0].get<double>());
  return Point::plane(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json point_to_json(const Point& pt) {
  Json arr = Json::array();
  for (int axis = 0; axis < pt.dim; ++axis) arr.push_back(pt[axis]);
  return arr;
}

Json instance_to_json(const Instance& instance) {
  Json metric;
  metric["kind"] = to_string(instance.metric.kind);
  if (instance.metric.kind == SpaceKind::Plane) metric["p"] = instance.metric.p;

  Json agents = Json::array();
  for (const Point& pt : instance.profile.points()) agents.push_back(point_to_json(pt));

  Json j;
  j["metric"] = std::move(metric);
  j["agents"] = std::move(agents);
  j["prediction"] = point_to_json(instance.prediction);
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw input_error("instance file must hold a JSON object");
  for (const char* field : {"metric", "agents", "prediction"})
    if (!j.contains(field)) throw input_error(std::string("instance file lacks field '") + field + "'");

  const Json& jm = j.at("metric");
  if (!jm.is_object() || !jm.contains("kind") || !jm.at("kind").is_string())
    throw input_error("instance field 'metric.kind' must be \"line\" or \"l2p\"");
  const std::string kind = jm.at("kind").get<std::string>();
  MetricSpec metric;
  if (kind == "line") {
    if (jm.contains("p")) throw input_error("metric 'line' does not take an exponent p");
    metric = MetricSpec::line();
  } else if (kind == "l2p") {
    if (!jm.contains("p") || !jm.at("p").is_number())
      throw input_error("metric 'l2p' needs a numeric exponent p");
    metric = MetricSpec::plane(jm.at("p").get<double>());
  } else {
    throw input_error("unknown metric kind '" + kind + "'");
  }

  const Json& ja = j.at("agents");
  if (!ja.is_array() || ja.empty())
    throw input_error("instance field 'agents' must be a nonempty array");
  std::vector<Point> agents;
  agents.reserve(ja.size());
  for (std::size_t i = 0; i < ja.size(); ++i)
    agents.push_back(point_from_json(ja[i], metric.dimension(),
                                     "agents[" + std::to_string(i) + "]"));

  const Point prediction = point_from_json(j.at("prediction"), metric.dimension(), "prediction");
  return Instance(metric, Profile(std::move(agents)), prediction);
}

std::string serialize_instance(const Instance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

Instance parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("instance parse error: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open instance file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance_text(buffer.str());
  } catch (const input_error& e) {
    throw input_error(path.string() + ": " + e.what());
  }
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write instance file: " + path.string());
  out << serialize_instance(instance);
}

Json outcome_to_json(const Outcome& outcome) {
  Json arr = Json::array();
  for (const auto& [pt, w] : outcome.support()) {
    Json entry;
    entry["point"] = point_to_json(pt);
    entry["weight"] = w;
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json error_value_to_json(const ErrorValue& eta) {
  return eta.infinite ? Json("inf") : Json(eta.eta);
}

Json ratio_report_to_json(const RatioReport& report) {
  Json j;
  j["objective"] = to_string(report.mode);
  j["eta"] = error_value_to_json(report.eta);
  j["mechanism_cost"] = report.mechanism_cost;
  j["optimal_cost"] = report.optimal_cost;
  j["ratio"] = json_number(report.ratio);
  return j;
}

Json oracle_result_to_json(const OracleResult& result) {
  Json j;
  j["method"] = to_string(result.method);
  j["location"] = point_to_json(result.location);
  j["cost"] = result.cost;
  j["tolerance"] = result.tolerance;
  return j;
}

Json deviation_to_json(const Deviation& deviation) {
  Json j;
  j["coalition"] = deviation.coalition;
  Json reports = Json::array();
  for (const Point& pt : deviation.misreports) reports.push_back(point_to_json(pt));
  j["misreports"] = std::move(reports);
  j["deltas"] = deviation.deltas;
  if (!deviation.note.empty()) j["note"] = deviation.note;
  return j;
}

Json audit_report_to_json(const AuditReport& report) {
  Json j;
  j["property"] = to_string(report.property);
  Json violations = Json::array();
  for (const Deviation& d : report.violations) violations.push_back(deviation_to_json(d));
  j["violations"] = std::move(violations);
  j["cells_searched"] = report.cells_searched;
  j["grid"] = report.grid_spec;
  j["complete"] = report.complete;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::string csv_mechanism_prefix(const MechanismSpec& spec, const MetricSpec& metric) {
  std::string row = to_string(spec.id);
  row += ',';
  if (spec.q) row += format_double(*spec.q);
  row += ',';
  if (metric.kind == SpaceKind::Plane) row += format_double(metric.p);
  return row;
}

}  // namespace

std::string curve_csv(const MechanismSpec& spec, const MetricSpec& metric,
                      std::span<const CurvePoint> curve, std::uint64_t seed) {
  std::string out = "mechanism,q,p,eta,worst_ratio,mean_ratio,bound,trials,seed\n";
  const std::string prefix = csv_mechanism_prefix(spec, metric);
  for (const CurvePoint& cp : curve) {
    out += prefix;
    out += ',';
    out += format_double(cp.eta);
    out += ',';
    out += format_double(cp.worst_ratio);
    out += ',';
    out += format_double(cp.mean_ratio);
    out += ',';
    out += format_double(cp.bound);
    out += ',';
    out += std::to_string(cp.trials);
    out += ',';
    out += std::to_string(seed);
    out += '\n';
  }
  return out;
}

Json curve_to_json(const MechanismSpec& spec, const MetricSpec& metric,
                   std::span<const CurvePoint> curve, std::uint64_t seed) {
  Json rows = Json::array();
  for (const CurvePoint& cp : curve) {
    Json row;
    row["mechanism"] = to_string(spec.id);
    row["q"] = spec.q ? Json(*spec.q) : Json(nullptr);
    row["p"] = metric.kind == SpaceKind::Plane ? Json(metric.p) : Json(nullptr);
    row["eta"] = cp.eta;
    row["worst_ratio"] = json_number(cp.worst_ratio);
    row["mean_ratio"] = json_number(cp.mean_ratio);
    row["bound"] = json_number(cp.bound);
    row["trials"] = cp.trials;
    row["seed"] = seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace floc
