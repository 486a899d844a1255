#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floc/analysis.hpp"
#include "floc/audit.hpp"
#include "floc/geometry.hpp"

namespace floc {

// Seeded random family. When eta_target is set, the prediction is placed so
// the measured prediction error hits the target exactly (up to solver
// tolerance in the plane); otherwise the prediction is uniform in the box
// inflated by one box width per side.
struct FamilySpec {
  MetricSpec metric;
  int n = 2;
  Box box;
  std::optional<double> eta_target;
  std::uint64_t seed = 0;
};

Instance gen_random(const FamilySpec& family);

// Sweep adapter: trial t uses the family's seed forked with {eta bits, t}.
InstanceGenerator family_generator(FamilySpec base);

// Tight family for MinMaxP: profile (0, 2) with the prediction at 1 + eta,
// so the measured error is eta and the clamp pays exactly 1 + min(1, eta)
// against an optimum of 1.
Instance fixture_minmaxp_tight(double eta);

// The two-instance construction behind the randomized 3/2 lower bound:
// profile (0, 2) with a correct prediction, and profile (0, 4) with the same
// prediction, which is then off by half the optimal cost.
std::pair<Instance, Instance> fixture_rand_lb();

// Three agents on the unit l_p circle with the prediction pushed along the
// diagonal: BoundingBox pays exactly 1 + min(eta, 2^(1/p)) against an
// optimum of 1. Requires p >= 2.
Instance fixture_bbox_tight(double p, double eta);

// Two stacked agents against one across the diagonal: CoordMedian pays
// exactly twice the optimum for every p >= 1.
Instance fixture_cm_tight(double p);

// Profile (0, 1, 2) where all three agents reporting the middle location
// moves LRM to a deterministic point: the middle agent gains 0.5 and the
// extremes are unaffected. Packaged with the deviation for audit replay.
std::pair<Instance, Deviation> fixture_lrm_sgsp();

// Probe series (0, 1, 2 + 0.01k) for k = 0..steps with an adversarial
// prediction at the left extreme.
std::vector<Instance> fixture_sgsp_moving(int steps);

struct FixtureParams {
  double eta = 0.0;
  double p = 2.0;
  int k = 0;
  int index = 0;  // selects within multi-instance fixtures
};

// Fixture registry for the CLI and config files.
Instance make_fixture(const std::string& name, const FixtureParams& params = {});
std::vector<std::string> fixture_names();

}  // namespace floc
