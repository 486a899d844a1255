#include "floc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace floc {

namespace detail {

double abs_pow(double d, double p) {
  d = std::fabs(d);
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  if (p == 3.0) return d * d * d;
  if (p == 4.0) {
    const double s = d * d;
    return s * s;
  }
  return std::pow(d, p);
}

double root_p(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  if (p == 3.0) return std::cbrt(s);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

MetricSpec MetricSpec::plane(double p) {
  if (!std::isfinite(p) || p < 1.0)
    throw input_error("l_p exponent must be finite and >= 1");
  return MetricSpec{SpaceKind::Plane, p};
}

Box Box::line(double lo, double hi) { return Box{{lo, 0.0}, {hi, 0.0}, 1}; }

Box Box::plane(double a_lo, double a_hi, double b_lo, double b_hi) {
  return Box{{a_lo, b_lo}, {a_hi, b_hi}, 2};
}

bool Box::contains(const Point& pt, double slack) const {
  if (pt.dim != dim) return false;
  for (int axis = 0; axis < dim; ++axis) {
    const auto i = static_cast<std::size_t>(axis);
    if (pt.coord[i] < lo[i] - slack || pt.coord[i] > hi[i] + slack) return false;
  }
  return true;
}

bool Box::contains(const Box& other, double slack) const {
  if (other.dim != dim) return false;
  for (int axis = 0; axis < dim; ++axis) {
    const auto i = static_cast<std::size_t>(axis);
    if (other.lo[i] < lo[i] - slack || other.hi[i] > hi[i] + slack) return false;
  }
  return true;
}

Box Box::inflated(double amount) const {
  Box out = *this;
  for (int axis = 0; axis < dim; ++axis) {
    const auto i = static_cast<std::size_t>(axis);
    out.lo[i] -= amount;
    out.hi[i] += amount;
  }
  return out;
}

Profile::Profile(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw input_error("profile must contain at least one agent");
  const int dim = points_.front().dim;
  for (const Point& pt : points_)
    if (pt.dim != dim) throw input_error("profile mixes point dimensions");
}

Profile Profile::line(std::initializer_list<double> xs) {
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back(Point::line(x));
  return Profile(std::move(pts));
}

Profile Profile::plane(std::initializer_list<std::array<double, 2>> in) {
  std::vector<Point> pts;
  pts.reserve(in.size());
  for (const auto& ab : in) pts.push_back(Point::plane(ab[0], ab[1]));
  return Profile(std::move(pts));
}

void Profile::set_point(int i, const Point& pt) {
  if (i < 0 || i >= size()) throw input_error("agent index out of range");
  if (pt.dim != dimension()) throw input_error("report dimension mismatch");
  points_[static_cast<std::size_t>(i)] = pt;
}

double Profile::coord_min(int axis) const {
  double m = points_.front()[axis];
  for (const Point& pt : points_) m = std::min(m, pt[axis]);
  return m;
}

double Profile::coord_max(int axis) const {
  double m = points_.front()[axis];
  for (const Point& pt : points_) m = std::max(m, pt[axis]);
  return m;
}

std::vector<double> Profile::sorted_line() const {
  std::vector<double> xs;
  xs.reserve(points_.size());
  for (const Point& pt : points_) xs.push_back(pt.coord[0]);
  std::sort(xs.begin(), xs.end());
  return xs;
}

Box Profile::bounding_box() const {
  Box box;
  box.dim = dimension();
  for (int axis = 0; axis < box.dim; ++axis) {
    const auto i = static_cast<std::size_t>(axis);
    box.lo[i] = coord_min(axis);
    box.hi[i] = coord_max(axis);
  }
  return box;
}

bool Profile::coincident() const {
  for (const Point& pt : points_)
    if (!(pt == points_.front())) return false;
  return true;
}

Instance::Instance(MetricSpec m, Profile pr, Point pred)
    : metric(m), profile(std::move(pr)), prediction(pred) {
  if (profile.dimension() != metric.dimension())
    throw input_error("profile dimension does not match the metric");
  if (prediction.dim != metric.dimension())
    throw input_error("prediction dimension does not match the metric");
}

Outcome Outcome::point(const Point& y) { return Outcome({{y, 1.0}}); }

Outcome::Outcome(std::vector<std::pair<Point, double>> support) {
  if (support.empty()) throw input_error("outcome support must be nonempty");
  const int in_dim = support.front().first.dim;
  for (const auto& [pt, w] : support) {
    if (pt.dim != in_dim) throw input_error("outcome support mixes dimensions");
    if (!(w >= 0.0)) throw input_error("outcome weight must be nonnegative");
    if (w == 0.0) continue;
    bool merged = false;
    for (auto& [q, wq] : support_) {
      if (q == pt) {
        wq += w;
        merged = true;
        break;
      }
    }
    if (!merged) support_.emplace_back(pt, w);
  }
  if (support_.empty()) throw input_error("outcome support must be nonempty");
  double total = 0.0;
  for (const auto& [pt, w] : support_) total += w;
  if (std::fabs(total - 1.0) > 1e-12)
    throw input_error("outcome weights must sum to 1");
}

const Point& Outcome::single() const {
  if (!deterministic()) throw input_error("outcome is not deterministic");
  return support_.front().first;
}

double Outcome::weight_of(const Point& pt) const {
  for (const auto& [q, w] : support_)
    if (q == pt) return w;
  return 0.0;
}

double distance(const MetricSpec& metric, const Point& a, const Point& b) {
  if (a.dim != metric.dimension() || b.dim != metric.dimension())
    throw input_error("point dimension does not match the metric");
  if (metric.kind == SpaceKind::Line) return std::fabs(a.coord[0] - b.coord[0]);
  const double da = std::fabs(a.coord[0] - b.coord[0]);
  const double db = std::fabs(a.coord[1] - b.coord[1]);
  if (metric.p == 2.0) return std::sqrt(da * da + db * db);
  if (metric.p == 1.0) return da + db;
  return detail::root_p(detail::abs_pow(da, metric.p) + detail::abs_pow(db, metric.p),
                        metric.p);
}

double max_cost(const MetricSpec& metric, const Profile& profile, const Point& y) {
  double worst = 0.0;
  for (const Point& pt : profile.points())
    worst = std::max(worst, distance(metric, pt, y));
  return worst;
}

double expected_agent_cost(const MetricSpec& metric, const Point& agent,
                           const Outcome& outcome) {
  double cost = 0.0;
  for (const auto& [pt, w] : outcome.support()) cost += w * distance(metric, agent, pt);
  return cost;
}

double expected_objective(const MetricSpec& metric, const Profile& profile,
                          const Outcome& outcome, ObjectiveMode mode) {
  if (mode == ObjectiveMode::ExpectedMax) {
    double total = 0.0;
    for (const auto& [pt, w] : outcome.support())
      total += w * max_cost(metric, profile, pt);
    return total;
  }
  double worst = 0.0;
  for (const Point& agent : profile.points())
    worst = std::max(worst, expected_agent_cost(metric, agent, outcome));
  return worst;
}

std::string to_string(SpaceKind kind) {
  return kind == SpaceKind::Line ? "line" : "l2p";
}

std::string to_string(ObjectiveMode mode) {
  return mode == ObjectiveMode::ExpectedMax ? "expected-max" : "max-of-expected";
}

}  // namespace floc
