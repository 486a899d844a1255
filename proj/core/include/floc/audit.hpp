#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "floc/geometry.hpp"
#include "floc/mechanisms.hpp"

namespace floc {

// Mechanisms under audit are plain maps (profile, prediction) -> Outcome, so
// externally defined stubs can be probed with the same machinery.
using MechanismFn = std::function<Outcome(const Profile&, const Point&)>;

MechanismFn mechanism_fn(const MechanismSpec& spec);

// Negative control: places the facility at the per-coordinate mean of the
// reports, which a single agent can drag. The auditor must flag it.
Outcome mean_of_reports(const Profile& profile, const Point& prediction);

enum class AuditProperty { SP, GSP, SGSP, Uncompromising, Unanimity, Range };

std::string to_string(AuditProperty property);
AuditProperty audit_property_from_string(const std::string& name);

// One violation witness: who deviated, to where, and each member's cost
// improvement (truthful expected cost minus deviated expected cost; positive
// means the member gained). Structural checks attach a note instead of
// deltas.
struct Deviation {
  std::vector<int> coalition;
  std::vector<Point> misreports;
  std::vector<double> deltas;
  std::string note;
};

struct AuditOptions {
  std::optional<double> step;         // misreport grid step; default diameter/40
  std::optional<double> coarse_step;  // coalition grids; default diameter/4
  std::optional<Box> region;          // default: bounding region + one diameter per side
  int max_coalition = 1;
  std::uint64_t cell_cap = 10'000'000;
  std::size_t max_witnesses = 1024;
  double tol = 1e-9;  // strictness tolerance on cost comparisons
};

struct AuditReport {
  AuditProperty property = AuditProperty::SP;
  std::vector<Deviation> violations;
  std::uint64_t cells_searched = 0;
  std::string grid_spec;
  bool complete = true;  // false when the cell cap truncated the search

  bool clean() const { return violations.empty(); }
};

// Single-agent deviations over the misreport grid (agent reports plus the
// prediction and the optimum are always injected). Costs use per-agent
// expectations, matching the incentive definitions for randomized outcomes.
AuditReport audit_sp(const MechanismFn& mechanism, const Instance& instance,
                     const AuditOptions& options = {});
AuditReport audit_sp(const MechanismSpec& spec, const Instance& instance,
                     const AuditOptions& options = {});

// Coalitions up to options.max_coalition where every member strictly gains.
// Size-1 searches use the full grid; larger coalitions use the injected
// special points plus a coarse grid to keep the product bounded.
AuditReport audit_gsp(const MechanismFn& mechanism, const Instance& instance,
                      const AuditOptions& options);
AuditReport audit_gsp(const MechanismSpec& spec, const Instance& instance,
                      const AuditOptions& options);

// Coalitions where some member strictly gains and no member loses more than
// the tolerance.
AuditReport audit_sgsp(const MechanismFn& mechanism, const Instance& instance,
                       const AuditOptions& options);
AuditReport audit_sgsp(const MechanismSpec& spec, const Instance& instance,
                       const AuditOptions& options);

// Range (output inside the agents' extreme interval / bounding box),
// Unanimity (coincident profiles return the common point), and, for
// deterministic line mechanisms, the uncompromising property over the grid.
std::vector<AuditReport> audit_structure(const MechanismSpec& spec, const Instance& instance,
                                         const AuditOptions& options = {});

// Recomputes a witness's deltas from scratch; reports must replay exactly.
std::vector<double> replay_deviation(const MechanismFn& mechanism, const Instance& instance,
                                     const Deviation& deviation);

}  // namespace floc
