#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "floc/analysis.hpp"
#include "floc/audit.hpp"
#include "floc/instances.hpp"
#include "floc/serialization.hpp"

namespace floc {

enum class Command { Eval, Sweep, Audit, Adversary, Oracle, Gen };

// Where the instance comes from: a file, a named fixture, or a seeded
// generator family. Exactly one must be set.
struct InstanceSource {
  std::optional<std::string> file;
  std::optional<std::string> fixture;
  FixtureParams params;
  std::optional<FamilySpec> family;

  Instance resolve() const;
};

// A run is fully determined by its config: same config, same output bytes.
struct RunConfig {
  Command command = Command::Eval;
  std::optional<MechanismSpec> mechanism;
  InstanceSource source;
  ObjectiveMode mode = ObjectiveMode::ExpectedMax;
  double tol = 1e-9;

  // sweep / adversary / gen
  MetricSpec metric = MetricSpec::line();
  int n = 2;
  Box box = Box::line(0.0, 1.0);
  std::vector<double> eta_grid;
  int trials = 0;
  std::uint64_t seed = 0;
  std::optional<double> eta_target;

  // audit: property name is one of sp, gsp, sgsp, structure, range,
  // unanimity, uncompromising
  std::string property = "sp";
  AuditOptions audit;

  // oracle
  std::optional<double> grid_step;

  std::optional<std::string> out_path;   // CSV / instance file
  std::optional<std::string> json_path;  // JSON mirror
};

struct RunResult {
  int exit_code = 0;
  std::string output;  // text for stdout, already newline-terminated
};

// Exit codes shared by library and CLI: 0 success or clean audit,
// 1 violations found, 2 input error, 3 solver error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverError = 3;

RunResult run_command(const RunConfig& config);

RunResult cmd_eval(const RunConfig& config);
RunResult cmd_sweep(const RunConfig& config);
RunResult cmd_audit(const RunConfig& config);
RunResult cmd_adversary(const RunConfig& config);
RunResult cmd_oracle(const RunConfig& config);
RunResult cmd_gen(const RunConfig& config);

// Relative output paths land under $FLOC_OUT_DIR when it is set; absolute
// paths and unset environments pass through unchanged.
std::filesystem::path resolve_output_path(const std::string& path);

}  // namespace floc
