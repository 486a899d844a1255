#pragma once

#include <optional>
#include <string>

#include "floc/geometry.hpp"

namespace floc {

// Every mechanism in the library. MinMaxP, Median, LRM, MixedLine and
// RandLine1C2R act on the line; BoundingBox, CoordMedian and Mixed2D act on
// the plane. Median, LRM and CoordMedian ignore the prediction.
enum class MechanismId {
  MinMaxP,
  Median,
  LRM,
  MixedLine,
  RandLine1C2R,
  BoundingBox,
  CoordMedian,
  Mixed2D,
};

// Mechanism selector: id plus the mixing probability q for the two mixtures.
// q must be present exactly for MixedLine and Mixed2D, and lie in [0, 1].
struct MechanismSpec {
  MechanismId id = MechanismId::MinMaxP;
  std::optional<double> q;

  static MechanismSpec make(MechanismId id, std::optional<double> q = std::nullopt);
  std::string name() const;  // e.g. "MixedLine(q=0.5)"
};

bool is_mixture(MechanismId id);
bool is_line_mechanism(MechanismId id);
bool is_prediction_free(MechanismId id);
bool is_deterministic(MechanismId id);
std::string to_string(MechanismId id);
MechanismId mechanism_id_from_string(const std::string& name);

// y = max(x_1, min(x_n, pi)): the prediction clamped to the agent range.
Outcome minmaxp(const Profile& profile, const Point& prediction);

// Prediction-free baseline: the left median (the ceil(n/2)-th smallest report).
Outcome median_line(const Profile& profile);

// x_1, x_n and their midpoint with probabilities 1/4, 1/4, 1/2.
Outcome lrm(const Profile& profile);

// Randomized, 1-consistent and 2-robust: the prediction itself when it lies
// in [x_1, x_n]; otherwise the two extremes with weights driven by how far
// outside the prediction sits, capped at an even split.
Outcome rand_line_1c2r(const Profile& profile, const Point& prediction);

// MinMaxP with probability 1-q, LRM with probability q.
Outcome mixed_line(const Profile& profile, const Point& prediction, double q);

// Per-coordinate clamp of the prediction into the agents' bounding box.
Outcome bounding_box(const Profile& profile, const Point& prediction);

// Left median independently per coordinate.
Outcome coord_median(const Profile& profile);

// BoundingBox with probability 1-q, CoordMedian with probability q.
Outcome mixed_2d(const Profile& profile, const Point& prediction, double q);

// Dispatcher. Randomized mechanisms return their full distribution, never a
// sample; prediction-free ids ignore the instance's prediction. Rejects
// line/plane mismatches.
Outcome run(const MechanismSpec& spec, const Instance& instance);

}  // namespace floc
