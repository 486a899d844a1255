#include "floc/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace floc {

namespace {

constexpr double kBoundSlack = 1e-6;

std::string point_str(const Point& pt) {
  std::string out = "(";
  for (int axis = 0; axis < pt.dim; ++axis) {
    if (axis) out += ",";
    out += format_double(pt[axis]);
  }
  out += ")";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path resolved = resolve_output_path(path);
  if (resolved.has_parent_path())
    std::filesystem::create_directories(resolved.parent_path());
  std::ofstream out(resolved, std::ios::binary);
  if (!out) throw input_error("cannot write output file: " + resolved.string());
  out << text;
}

void write_json_mirror(const std::optional<std::string>& path, const Json& j) {
  if (path) write_text_file(*path, j.dump(2) + "\n");
}

const MechanismSpec& require_mechanism(const RunConfig& config) {
  if (!config.mechanism) throw input_error("this command needs --mechanism");
  return *config.mechanism;
}

std::string instance_summary(const Instance& instance) {
  std::string out = to_string(instance.metric.kind);
  if (instance.metric.kind == SpaceKind::Plane)
    out += " p=" + format_double(instance.metric.p);
  out += " n=" + std::to_string(instance.profile.size());
  out += " prediction=" + point_str(instance.prediction);
  return out;
}

double eta_for_bound(const ErrorValue& eta) {
  return eta.infinite ? std::numeric_limits<double>::infinity() : eta.eta;
}

}  // namespace

std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("FLOC_OUT_DIR"); dir && *dir)
    return std::filesystem::path(dir) / p;
  return p;
}

Instance InstanceSource::resolve() const {
  const int sources = (file ? 1 : 0) + (fixture ? 1 : 0) + (family ? 1 : 0);
  if (sources != 1)
    throw input_error("exactly one instance source is required (file, fixture or generator)");
  if (file) return load_instance(*file);
  if (fixture) return make_fixture(*fixture, params);
  return gen_random(*family);
}

RunResult cmd_eval(const RunConfig& config) {
  const MechanismSpec spec = require_mechanism(config);
  const Instance instance = config.source.resolve();
  const RatioReport report = approx_ratio(spec, instance, config.mode, config.tol);

  const bool bounded = has_closed_form_bound(spec.id);
  const double bound =
      bounded ? closed_form_bound(spec, eta_for_bound(report.eta), instance.metric.p)
              : std::numeric_limits<double>::quiet_NaN();
  const bool pass = !bounded || report.ratio <= bound + kBoundSlack;

  std::string out;
  out += "mechanism: " + spec.name() + "\n";
  out += "instance: " + instance_summary(instance) + "\n";
  out += "objective: " + to_string(report.mode) + "\n";
  out += "eta: " + (report.eta.infinite ? std::string("inf") : format_double(report.eta.eta)) + "\n";
  out += "mechanism_cost: " + format_double(report.mechanism_cost) + "\n";
  out += "optimal_cost: " + format_double(report.optimal_cost) + "\n";
  out += "ratio: " + format_double(report.ratio) + "\n";
  out += "bound: " + (bounded ? format_double(bound) : std::string("n/a")) + "\n";
  out += std::string(pass ? "PASS" : "FAIL") + "\n";

  Json j = ratio_report_to_json(report);
  j["mechanism"] = to_string(spec.id);
  if (spec.q) j["q"] = *spec.q;
  j["bound"] = bounded ? Json(bound) : Json(nullptr);
  j["pass"] = pass;
  write_json_mirror(config.json_path, j);

  return {pass ? kExitSuccess : kExitViolations, out};
}

RunResult cmd_sweep(const RunConfig& config) {
  const MechanismSpec spec = require_mechanism(config);
  if (config.eta_grid.empty()) throw input_error("sweep needs a nonempty --eta-grid");
  FamilySpec base{config.metric, config.n, config.box, std::nullopt, config.seed};
  const std::vector<CurvePoint> curve =
      gamma_sweep(spec, config.metric, family_generator(base), config.eta_grid,
                  config.trials, config.mode, config.tol);
  const std::string csv = curve_csv(spec, config.metric, curve, config.seed);
  write_json_mirror(config.json_path, curve_to_json(spec, config.metric, curve, config.seed));
  if (config.out_path) {
    write_text_file(*config.out_path, csv);
    return {kExitSuccess, "wrote " + std::to_string(curve.size()) + " rows to " +
                              resolve_output_path(*config.out_path).string() + "\n"};
  }
  return {kExitSuccess, csv};
}

RunResult cmd_audit(const RunConfig& config) {
  const MechanismSpec spec = require_mechanism(config);
  const Instance instance = config.source.resolve();

  std::vector<AuditReport> reports;
  if (config.property == "sp") {
    reports.push_back(audit_sp(spec, instance, config.audit));
  } else if (config.property == "gsp") {
    reports.push_back(audit_gsp(spec, instance, config.audit));
  } else if (config.property == "sgsp") {
    reports.push_back(audit_sgsp(spec, instance, config.audit));
  } else if (config.property == "structure") {
    reports = audit_structure(spec, instance, config.audit);
  } else {
    const AuditProperty wanted = audit_property_from_string(config.property);
    for (AuditReport& r : audit_structure(spec, instance, config.audit))
      if (r.property == wanted) reports.push_back(std::move(r));
    if (reports.empty())
      throw input_error("property '" + config.property + "' does not apply to " +
                        to_string(spec.id) + " on this instance");
  }

  bool any_violations = false;
  std::string out;
  Json mirror = Json::array();
  for (const AuditReport& report : reports) {
    any_violations = any_violations || !report.clean();
    out += "property=" + to_string(report.property);
    out += " mechanism=" + spec.name();
    out += " violations=" + std::to_string(report.violations.size());
    out += " cells=" + std::to_string(report.cells_searched);
    out += std::string(" complete=") + (report.complete ? "yes" : "no");
    out += "\n";
    for (const Deviation& d : report.violations) {
      out += "  coalition=[";
      for (std::size_t i = 0; i < d.coalition.size(); ++i)
        out += (i ? "," : "") + std::to_string(d.coalition[i]);
      out += "] misreports=[";
      for (std::size_t i = 0; i < d.misreports.size(); ++i)
        out += (i ? "," : "") + point_str(d.misreports[i]);
      out += "] deltas=[";
      for (std::size_t i = 0; i < d.deltas.size(); ++i)
        out += (i ? "," : "") + format_double(d.deltas[i]);
      out += "]";
      if (!d.note.empty()) out += " note=" + d.note;
      out += "\n";
    }
    mirror.push_back(audit_report_to_json(report));
  }
  write_json_mirror(config.json_path, mirror);
  return {any_violations ? kExitViolations : kExitSuccess, out};
}

RunResult cmd_adversary(const RunConfig& config) {
  const MechanismSpec spec = require_mechanism(config);
  if (config.eta_grid.empty()) throw input_error("adversary needs a nonempty --eta-grid");
  if (!has_closed_form_bound(spec.id))
    throw input_error(to_string(spec.id) + " has no bound to stress against");

  const bool line = is_line_mechanism(spec.id);
  const double p = config.metric.kind == SpaceKind::Plane ? config.metric.p : 2.0;

  std::string csv = "mechanism,q,p,eta,ratio,bound,gap\n";
  Json rows = Json::array();
  bool within = true;
  for (const double eta : config.eta_grid) {
    Instance instance = line ? fixture_minmaxp_tight(eta)
                       : spec.id == MechanismId::CoordMedian
                           ? fixture_cm_tight(p)
                           : fixture_bbox_tight(p, eta);
    const RatioReport report = approx_ratio(spec, instance, config.mode, config.tol);
    const double bound = closed_form_bound(spec, eta, p);
    const double gap = bound - report.ratio;
    within = within && report.ratio <= bound + kBoundSlack;
    csv += to_string(spec.id);
    csv += ',';
    if (spec.q) csv += format_double(*spec.q);
    csv += ',';
    if (!line) csv += format_double(p);
    csv += ',' + format_double(eta) + ',' + format_double(report.ratio) + ',' +
           format_double(bound) + ',' + format_double(gap) + '\n';
    Json row;
    row["mechanism"] = to_string(spec.id);
    row["q"] = spec.q ? Json(*spec.q) : Json(nullptr);
    row["p"] = line ? Json(nullptr) : Json(p);
    row["eta"] = eta;
    row["ratio"] = report.ratio;
    row["bound"] = bound;
    row["gap"] = gap;
    rows.push_back(std::move(row));
  }
  write_json_mirror(config.json_path, rows);
  if (config.out_path) {
    write_text_file(*config.out_path, csv);
    return {within ? kExitSuccess : kExitViolations,
            "wrote adversary table to " + resolve_output_path(*config.out_path).string() + "\n"};
  }
  return {within ? kExitSuccess : kExitViolations, csv};
}

RunResult cmd_oracle(const RunConfig& config) {
  const Instance instance = config.source.resolve();
  const OracleResult primary =
      optimal_center(instance.metric, instance.profile, config.tol);

  std::string out;
  out += "method: " + to_string(primary.method) + "\n";
  out += "location: " + point_str(primary.location) + "\n";
  out += "cost: " + format_double(primary.cost) + "\n";
  out += "tolerance: " + format_double(primary.tolerance) + "\n";

  Json j;
  j["primary"] = oracle_result_to_json(primary);

  int exit_code = kExitSuccess;
  if (config.grid_step) {
    const Box bounds = default_center_bounds(instance.profile, instance.metric);
    const OracleResult grid = brute_force_center(instance.profile, instance.metric,
                                                 bounds, *config.grid_step);
    const double diff = std::fabs(grid.cost - primary.cost);
    const double allowed = grid.tolerance + primary.tolerance + config.tol;
    out += "grid_cost: " + format_double(grid.cost) + "\n";
    out += "grid_tolerance: " + format_double(grid.tolerance) + "\n";
    out += "disagreement: " + format_double(diff) + "\n";
    j["grid"] = oracle_result_to_json(grid);
    j["disagreement"] = diff;
    if (diff > allowed) {
      out += "solvers disagree beyond certified tolerances\n";
      exit_code = kExitSolverError;
    }
  }
  write_json_mirror(config.json_path, j);
  return {exit_code, out};
}

RunResult cmd_gen(const RunConfig& config) {
  // A named fixture serializes through the same path as a random draw.
  const Instance instance =
      config.source.fixture
          ? make_fixture(*config.source.fixture, config.source.params)
          : gen_random(FamilySpec{config.metric, config.n, config.box,
                                  config.eta_target, config.seed});
  const std::string text = serialize_instance(instance);
  if (config.out_path) {
    write_text_file(*config.out_path, text);
    return {kExitSuccess,
            "wrote instance to " + resolve_output_path(*config.out_path).string() + "\n"};
  }
  return {kExitSuccess, text};
}

RunResult run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::Eval: return cmd_eval(config);
    case Command::Sweep: return cmd_sweep(config);
    case Command::Audit: return cmd_audit(config);
    case Command::Adversary: return cmd_adversary(config);
    case Command::Oracle: return cmd_oracle(config);
    case Command::Gen: return cmd_gen(config);
  }
  throw input_error("unknown command");
}

}  // namespace floc
