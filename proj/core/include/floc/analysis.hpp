#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "floc/geometry.hpp"
#include "floc/mechanisms.hpp"
#include "floc/oracle.hpp"

namespace floc {

// Single-instance evaluation: mechanism objective against the 1-center
// optimum. On a zero-cost instance the ratio is 1 when the mechanism also
// pays zero and +infinity otherwise.
struct RatioReport {
  double mechanism_cost = 0.0;
  double optimal_cost = 0.0;
  double ratio = 1.0;  // +infinity allowed
  ErrorValue eta;
  ObjectiveMode mode = ObjectiveMode::ExpectedMax;
};

RatioReport approx_ratio(const MechanismSpec& spec, const Instance& instance,
                         ObjectiveMode mode = ObjectiveMode::ExpectedMax,
                         double tol = 1e-9);

// Whether the mechanism carries a proven gamma(eta) bound. RandLine1C2R is
// only known to be 1-consistent and 2-robust, with no error-bound curve.
bool has_closed_form_bound(MechanismId id);

// The proven worst-case ratio at prediction-error bound eta (eta may be
// +infinity, which yields the robustness). p is required by the plane
// mechanisms and ignored on the line.
double closed_form_bound(const MechanismSpec& spec, double eta, double p = 0.0);

struct CurvePoint {
  double eta = 0.0;
  double worst_ratio = 0.0;  // NaN when no trials ran
  double mean_ratio = 0.0;   // auxiliary; worst-case is the headline column
  double bound = 0.0;        // NaN when no proven bound exists
  int trials = 0;
};

// Produces the instance for one sweep cell; implementations are pure in
// (eta_target, trial) given their captured seed.
using InstanceGenerator = std::function<Instance(double eta_target, std::uint64_t trial)>;

// Worst (and mean) observed ratio per eta over seeded generated instances,
// next to the closed-form bound.
std::vector<CurvePoint> gamma_sweep(const MechanismSpec& spec, const MetricSpec& metric,
                                    const InstanceGenerator& generator,
                                    std::span<const double> eta_grid, int trials,
                                    ObjectiveMode mode = ObjectiveMode::ExpectedMax,
                                    double tol = 1e-9);

struct ProbeGrid {
  Box box;
  double step = 0.0;
};

// Supremum of the ratio over a prediction grid; a probed robustness readout,
// reported at the grid's resolution rather than as an exact sup. The grid
// must cover the profile's bounding region inflated by one diameter.
RatioReport robustness_probe(const MechanismSpec& spec, const MetricSpec& metric,
                             const Profile& profile, const ProbeGrid& grid,
                             ObjectiveMode mode = ObjectiveMode::ExpectedMax,
                             double tol = 1e-9);

}  // namespace floc
