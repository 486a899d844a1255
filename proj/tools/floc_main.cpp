#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floc/harness.hpp"

namespace {

using floc::RunConfig;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string token = text.substr(pos, next - pos);
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw floc::input_error("cannot parse number '" + token + "'");
    }
    pos = next + 1;
  }
  return values;
}

floc::Box parse_box(const std::string& text, int dim) {
  const std::vector<double> v = parse_list(text);
  if (dim == 1) {
    if (v.size() != 2) throw floc::input_error("--box on the line takes lo,hi");
    return floc::Box::line(v[0], v[1]);
  }
  if (v.size() != 4) throw floc::input_error("--box in the plane takes alo,ahi,blo,bhi");
  return floc::Box::plane(v[0], v[1], v[2], v[3]);
}

// Everything the subcommands can set; turned into a RunConfig after parsing.
struct Flags {
  std::string mechanism;
  double q = 0.0;
  bool q_set = false;

  std::string instance_file;
  std::string fixture;
  bool use_generator = false;

  std::string metric = "line";
  double p = 2.0;
  bool p_set = false;
  int n = 2;
  std::string box;
  double eta = 0.0;
  bool eta_set = false;
  int k = 0;
  int index = 0;

  std::string objective = "expected-max";
  std::string eta_grid = "0,0.25,0.5,1,2";
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;

  std::string property = "sp";
  double step = 0.0;
  bool step_set = false;
  double coarse_step = 0.0;
  bool coarse_set = false;
  int max_coalition = 1;
  std::uint64_t cell_cap = 10'000'000;

  double grid_step = 0.0;
  bool grid_step_set = false;

  std::string out_path;
  std::string json_path;
};

floc::MetricSpec metric_from_flags(const Flags& f) {
  if (f.metric == "line") return floc::MetricSpec::line();
  if (f.metric == "l2p") return floc::MetricSpec::plane(f.p);
  throw floc::input_error("--metric must be 'line' or 'l2p'");
}

floc::ObjectiveMode mode_from_flags(const Flags& f) {
  if (f.objective == "expected-max") return floc::ObjectiveMode::ExpectedMax;
  if (f.objective == "max-of-expected") return floc::ObjectiveMode::MaxOfExpected;
  throw floc::input_error("--objective must be 'expected-max' or 'max-of-expected'");
}

RunConfig build_config(const Flags& f, floc::Command command) {
  RunConfig config;
  config.command = command;
  config.mode = mode_from_flags(f);
  config.tol = f.tol;
  config.seed = f.seed;
  config.trials = f.trials;
  config.n = f.n;
  config.property = f.property;

  if (!f.mechanism.empty()) {
    const floc::MechanismId id = floc::mechanism_id_from_string(f.mechanism);
    config.mechanism = floc::MechanismSpec::make(
        id, f.q_set ? std::optional<double>(f.q) : std::nullopt);
  }

  // Plane mechanisms imply the plane even when --metric is left at its
  // default; an explicit --metric l2p works the same way.
  const bool plane_mechanism =
      config.mechanism && !floc::is_line_mechanism(config.mechanism->id);
  if (f.metric == "line" && plane_mechanism &&
      (command == floc::Command::Sweep || command == floc::Command::Adversary)) {
    config.metric = floc::MetricSpec::plane(f.p);
  } else {
    config.metric = metric_from_flags(f);
  }
  config.box = f.box.empty()
                   ? (config.metric.kind == floc::SpaceKind::Line
                          ? floc::Box::line(0.0, 1.0)
                          : floc::Box::plane(0.0, 1.0, 0.0, 1.0))
                   : parse_box(f.box, config.metric.dimension());
  config.eta_grid = parse_list(f.eta_grid);
  if (f.eta_set) config.eta_target = f.eta;

  if (!f.instance_file.empty()) config.source.file = f.instance_file;
  if (!f.fixture.empty()) {
    config.source.fixture = f.fixture;
    config.source.params.eta = f.eta;
    config.source.params.p = f.p;
    config.source.params.k = f.k;
    config.source.params.index = f.index;
  }
  if (f.use_generator) {
    floc::FamilySpec family;
    family.metric = config.metric;
    family.n = f.n;
    family.box = config.box;
    family.seed = f.seed;
    if (f.eta_set) family.eta_target = f.eta;
    config.source.family = family;
  }

  if (f.step_set) config.audit.step = f.step;
  if (f.coarse_set) config.audit.coarse_step = f.coarse_step;
  config.audit.max_coalition = f.max_coalition;
  config.audit.cell_cap = f.cell_cap;
  config.audit.tol = f.tol;

  if (f.grid_step_set) config.grid_step = f.grid_step;
  if (!f.out_path.empty()) config.out_path = f.out_path;
  if (!f.json_path.empty()) config.json_path = f.json_path;
  return config;
}

void add_mechanism_flags(CLI::App* sub, Flags& f, bool required = true) {
  auto* m = sub->add_option("--mechanism", f.mechanism,
                            "MinMaxP, Median, LRM, MixedLine, RandLine1C2R, "
                            "BoundingBox, CoordMedian or Mixed2D");
  if (required) m->required();
  sub->add_option("--q", f.q, "mixing probability for MixedLine / Mixed2D")
      ->check(CLI::Range(0.0, 1.0))
      ->each([&f](const std::string&) { f.q_set = true; });
}

void add_source_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--instance", f.instance_file, "instance JSON file");
  sub->add_option("--fixture", f.fixture,
                  "named fixture: minmaxp_tight, rand_lb, bbox_tight, cm_tight, "
                  "lrm_sgsp or sgsp_moving (parameters via --eta/--p/--k/--index)");
  sub->add_flag("--gen", f.use_generator, "draw the instance from a seeded generator");
  sub->add_option("--metric", f.metric, "line or l2p")->check(CLI::IsMember({"line", "l2p"}));
  sub->add_option("--p", f.p, "l_p exponent")->each([&f](const std::string&) { f.p_set = true; });
  sub->add_option("--n", f.n, "agent count")->check(CLI::PositiveNumber);
  sub->add_option("--eta", f.eta, "prediction error target / fixture parameter")
      ->each([&f](const std::string&) { f.eta_set = true; });
  sub->add_option("--k", f.k, "fixture step parameter");
  sub->add_option("--index", f.index, "index within multi-instance fixtures");
  sub->add_option("--seed", f.seed, "generator seed");
  sub->add_option("--box", f.box, "coordinate box lo,hi (line) or alo,ahi,blo,bhi (plane)");
}

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--objective", f.objective, "expected-max or max-of-expected")
      ->check(CLI::IsMember({"expected-max", "max-of-expected"}));
  sub->add_option("--tol", f.tol, "solver / comparison tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--json", f.json_path, "write a JSON mirror of the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategyproof facility location mechanisms with predictions"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* eval = app.add_subcommand("eval", "evaluate one mechanism on one instance");
  add_mechanism_flags(eval, f);
  add_source_flags(eval, f);
  add_common_flags(eval, f);

  CLI::App* sweep = app.add_subcommand("sweep", "worst-case ratio curve over an eta grid");
  add_mechanism_flags(sweep, f);
  add_common_flags(sweep, f);
  sweep->add_option("--metric", f.metric, "line or l2p")->check(CLI::IsMember({"line", "l2p"}));
  sweep->add_option("--p", f.p, "l_p exponent")->each([&f](const std::string&) { f.p_set = true; });
  sweep->add_option("--n", f.n, "agents per instance")->check(CLI::PositiveNumber);
  sweep->add_option("--box", f.box, "coordinate box");
  sweep->add_option("--eta-grid", f.eta_grid, "comma-separated eta values");
  sweep->add_option("--trials", f.trials, "instances per eta")->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", f.seed, "sweep seed");
  sweep->add_option("--out", f.out_path, "CSV output path");

  CLI::App* audit = app.add_subcommand("audit", "incentive / structure audit (exit 1 on violations)");
  add_mechanism_flags(audit, f);
  add_source_flags(audit, f);
  add_common_flags(audit, f);
  audit->add_option("--property", f.property,
                    "sp, gsp, sgsp, structure, range, unanimity or uncompromising");
  audit->add_option("--step", f.step, "misreport grid step")
      ->each([&f](const std::string&) { f.step_set = true; });
  audit->add_option("--coarse-step", f.coarse_step, "coalition grid step")
      ->each([&f](const std::string&) { f.coarse_set = true; });
  audit->add_option("--max-coalition", f.max_coalition, "largest coalition size")
      ->check(CLI::PositiveNumber);
  audit->add_option("--cell-cap", f.cell_cap, "search budget in cells");

  CLI::App* adversary =
      app.add_subcommand("adversary", "stress a mechanism's bound on its tight family");
  add_mechanism_flags(adversary, f);
  add_common_flags(adversary, f);
  adversary->add_option("--p", f.p, "l_p exponent for plane mechanisms")
      ->each([&f](const std::string&) { f.p_set = true; });
  adversary->add_option("--eta-grid", f.eta_grid, "comma-separated eta values");
  adversary->add_option("--out", f.out_path, "CSV output path");

  CLI::App* oracle = app.add_subcommand("oracle", "optimal facility location and cost");
  add_source_flags(oracle, f);
  add_common_flags(oracle, f);
  oracle->add_option("--grid-step", f.grid_step, "cross-check against the grid solver")
      ->each([&f](const std::string&) { f.grid_step_set = true; });

  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance");
  add_source_flags(gen, f);
  gen->add_option("--out", f.out_path, "instance output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return floc::kExitInputError;
  }

  floc::Command command = floc::Command::Eval;
  if (sweep->parsed()) command = floc::Command::Sweep;
  if (audit->parsed()) command = floc::Command::Audit;
  if (adversary->parsed()) command = floc::Command::Adversary;
  if (oracle->parsed()) command = floc::Command::Oracle;
  if (gen->parsed()) {
    command = floc::Command::Gen;
    f.use_generator = true;
  }

  try {
    const floc::RunResult result = floc::run_command(build_config(f, command));
    std::cout << result.output;
    return result.exit_code;
  } catch (const floc::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return floc::kExitInputError;
  } catch (const floc::solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return floc::kExitSolverError;
  }
}
