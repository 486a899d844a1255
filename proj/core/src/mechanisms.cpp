#include "floc/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace floc {

namespace {

void require_line(const Profile& profile) {
  if (profile.dimension() != 1) throw input_error("mechanism expects a line profile");
}

void require_plane(const Profile& profile) {
  if (profile.dimension() != 2) throw input_error("mechanism expects a plane profile");
}

double clamp(double lo, double hi, double v) { return std::max(lo, std::min(hi, v)); }

// Left median: the ceil(n/2)-th order statistic, i.e. index (n-1)/2 of the
// sorted coordinates. Deterministic for even n where the definition is
// otherwise ambiguous.
double left_median(std::vector<double> xs) {
  const auto k = (xs.size() - 1) / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return xs[k];
}

std::vector<double> axis_coords(const Profile& profile, int axis) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(profile.size()));
  for (const Point& pt : profile.points()) xs.push_back(pt[axis]);
  return xs;
}

Outcome mix(const Outcome& first, double w_first, const Outcome& second, double w_second) {
  std::vector<std::pair<Point, double>> support;
  support.reserve(first.support().size() + second.support().size());
  for (const auto& [pt, w] : first.support()) support.emplace_back(pt, w * w_first);
  for (const auto& [pt, w] : second.support()) support.emplace_back(pt, w * w_second);
  return Outcome(std::move(support));
}

}  // namespace

MechanismSpec MechanismSpec::make(MechanismId id, std::optional<double> q) {
  if (is_mixture(id)) {
    if (!q) throw input_error(to_string(id) + " requires a mixing probability q");
    if (!(*q >= 0.0 && *q <= 1.0)) throw input_error("q must lie in [0, 1]");
  } else if (q) {
    throw input_error(to_string(id) + " does not take a mixing probability");
  }
  return MechanismSpec{id, q};
}

std::string MechanismSpec::name() const {
  std::string out = to_string(id);
  if (q) {
    out += "(q=";
    out += std::to_string(*q);
    out += ")";
  }
  return out;
}

bool is_mixture(MechanismId id) {
  return id == MechanismId::MixedLine || id == MechanismId::Mixed2D;
}

bool is_line_mechanism(MechanismId id) {
  switch (id) {
    case MechanismId::BoundingBox:
    case MechanismId::CoordMedian:
    case MechanismId::Mixed2D:
      return false;
    default:
      return true;
  }
}

bool is_prediction_free(MechanismId id) {
  return id == MechanismId::Median || id == MechanismId::LRM ||
         id == MechanismId::CoordMedian;
}

bool is_deterministic(MechanismId id) {
  switch (id) {
    case MechanismId::MinMaxP:
    case MechanismId::Median:
    case MechanismId::BoundingBox:
    case MechanismId::CoordMedian:
      return true;
    default:
      return false;
  }
}

std::string to_string(MechanismId id) {
  switch (id) {
    case MechanismId::MinMaxP: return "MinMaxP";
    case MechanismId::Median: return "Median";
    case MechanismId::LRM: return "LRM";
    case MechanismId::MixedLine: return "MixedLine";
    case MechanismId::RandLine1C2R: return "RandLine1C2R";
    case MechanismId::BoundingBox: return "BoundingBox";
    case MechanismId::CoordMedian: return "CoordMedian";
    case MechanismId::Mixed2D: return "Mixed2D";
  }
  throw input_error("unknown mechanism id");
}

MechanismId mechanism_id_from_string(const std::string& name) {
  if (name == "MinMaxP") return MechanismId::MinMaxP;
  if (name == "Median") return MechanismId::Median;
  if (name == "LRM") return MechanismId::LRM;
  if (name == "MixedLine") return MechanismId::MixedLine;
  if (name == "RandLine1C2R") return MechanismId::RandLine1C2R;
  if (name == "BoundingBox") return MechanismId::BoundingBox;
  if (name == "CoordMedian") return MechanismId::CoordMedian;
  if (name == "Mixed2D") return MechanismId::Mixed2D;
  throw input_error("unknown mechanism: " + name);
}

Outcome minmaxp(const Profile& profile, const Point& prediction) {
  require_line(profile);
  const double x1 = profile.line_min();
  const double xn = profile.line_max();
  return Outcome::point(Point::line(clamp(x1, xn, prediction.x())));
}

Outcome median_line(const Profile& profile) {
  require_line(profile);
  return Outcome::point(Point::line(left_median(axis_coords(profile, 0))));
}

Outcome lrm(const Profile& profile) {
  require_line(profile);
  const double x1 = profile.line_min();
  const double xn = profile.line_max();
  if (x1 == xn) return Outcome::point(Point::line(x1));
  return Outcome({{Point::line(x1), 0.25},
                  {Point::line(xn), 0.25},
                  {Point::line(0.5 * (x1 + xn)), 0.5}});
}

Outcome rand_line_1c2r(const Profile& profile, const Point& prediction) {
  require_line(profile);
  const double x1 = profile.line_min();
  const double xn = profile.line_max();
  // Coincident extremes short-circuit to unanimity before the division below.
  if (x1 == xn) return Outcome::point(Point::line(x1));
  const double pi = prediction.x();
  if (pi >= x1 && pi <= xn) return Outcome::point(Point::line(pi));
  if (pi < x1) {
    const double t = (x1 - pi) / (xn - x1);
    return Outcome({{Point::line(x1), std::max(0.5, 1.0 - t)},
                    {Point::line(xn), std::min(0.5, t)}});
  }
  const double t = (pi - xn) / (xn - x1);
  return Outcome({{Point::line(xn), std::max(0.5, 1.0 - t)},
                  {Point::line(x1), std::min(0.5, t)}});
}

Outcome mixed_line(const Profile& profile, const Point& prediction, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw input_error("q must lie in [0, 1]");
  return mix(minmaxp(profile, prediction), 1.0 - q, lrm(profile), q);
}

Outcome bounding_box(const Profile& profile, const Point& prediction) {
  require_plane(profile);
  if (prediction.dim != 2) throw input_error("prediction dimension mismatch");
  const Box box = profile.bounding_box();
  return Outcome::point(Point::plane(clamp(box.lo[0], box.hi[0], prediction[0]),
                                     clamp(box.lo[1], box.hi[1], prediction[1])));
}

Outcome coord_median(const Profile& profile) {
  require_plane(profile);
  return Outcome::point(Point::plane(left_median(axis_coords(profile, 0)),
                                     left_median(axis_coords(profile, 1))));
}

Outcome mixed_2d(const Profile& profile, const Point& prediction, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw input_error("q must lie in [0, 1]");
  return mix(bounding_box(profile, prediction), 1.0 - q, coord_median(profile), q);
}

Outcome run(const MechanismSpec& spec, const Instance& instance) {
  const MechanismSpec checked = MechanismSpec::make(spec.id, spec.q);
  const bool line = is_line_mechanism(checked.id);
  if (line != (instance.metric.kind == SpaceKind::Line))
    throw input_error(to_string(checked.id) + " does not act on " +
                      to_string(instance.metric.kind) + " instances");
  switch (checked.id) {
    case MechanismId::MinMaxP: return minmaxp(instance.profile, instance.prediction);
    case MechanismId::Median: return median_line(instance.profile);
    case MechanismId::LRM: return lrm(instance.profile);
    case MechanismId::MixedLine:
      return mixed_line(instance.profile, instance.prediction, *checked.q);
    case MechanismId::RandLine1C2R:
      return rand_line_1c2r(instance.profile, instance.prediction);
    case MechanismId::BoundingBox:
      return bounding_box(instance.profile, instance.prediction);
    case MechanismId::CoordMedian: return coord_median(instance.profile);
    case MechanismId::Mixed2D:
      return mixed_2d(instance.profile, instance.prediction, *checked.q);
  }
  throw input_error("unknown mechanism id");
}

}  // namespace floc
