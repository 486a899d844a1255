#pragma once

#include <array>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "floc/errors.hpp"

namespace floc {

enum class SpaceKind { Line, Plane };

// The space agents live in: the real line, or the plane under the l_p norm
// d_p(x, y) = (|x0 - y0|^p + |x1 - y1|^p)^(1/p) with finite exponent p >= 1.
// The line is its own kind, not a degenerate plane, so line-only guarantees
// (e.g. output within [x_1, x_n]) can be checked exactly.
struct MetricSpec {
  SpaceKind kind = SpaceKind::Line;
  double p = 0.0;  // exponent; meaningful for Plane only

  static MetricSpec line() { return MetricSpec{SpaceKind::Line, 0.0}; }
  static MetricSpec plane(double p);

  int dimension() const { return kind == SpaceKind::Line ? 1 : 2; }
  bool operator==(const MetricSpec&) const = default;
};

// A location in either space. Line points keep coord[1] at zero; dim records
// the real dimension.
struct Point {
  std::array<double, 2> coord{0.0, 0.0};
  int dim = 1;

  static Point line(double x) { return Point{{x, 0.0}, 1}; }
  static Point plane(double a, double b) { return Point{{a, b}, 2}; }

  double operator[](int axis) const { return coord[static_cast<std::size_t>(axis)]; }
  double x() const { return coord[0]; }
  bool operator==(const Point&) const = default;
};

// Axis-aligned box: search bounds, generator domains, probe grids.
struct Box {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
  int dim = 1;

  static Box line(double lo, double hi);
  static Box plane(double a_lo, double a_hi, double b_lo, double b_hi);

  double width(int axis) const {
    return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)];
  }
  bool contains(const Point& pt, double slack = 0.0) const;
  bool contains(const Box& other, double slack = 0.0) const;
  // Grows every side by amount (so each width grows by 2*amount).
  Box inflated(double amount) const;
};

// Agent location profile, n >= 1, all points of one dimension. Report order
// is preserved (it carries agent identity); the sorted line view is exposed
// through line_min/line_max/sorted_line.
class Profile {
 public:
  explicit Profile(std::vector<Point> points);
  static Profile line(std::initializer_list<double> xs);
  static Profile plane(std::initializer_list<std::array<double, 2>> pts);

  const std::vector<Point>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  int dimension() const { return points_.front().dim; }
  const Point& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }

  // Replaces one agent's report; dimension must match. Used by deviation
  // searches that probe many misreports against one base profile.
  void set_point(int i, const Point& pt);

  double coord_min(int axis) const;
  double coord_max(int axis) const;
  double line_min() const { return coord_min(0); }  // x_1
  double line_max() const { return coord_max(0); }  // x_n
  std::vector<double> sorted_line() const;
  Box bounding_box() const;
  bool coincident() const;  // all agents at one point

 private:
  std::vector<Point> points_;
};

struct Instance {
  MetricSpec metric;
  Profile profile;
  Point prediction;

  Instance(MetricSpec metric, Profile profile, Point prediction);
};

// Finite-support distribution over facility locations; a deterministic
// mechanism is the single-point case. Construction merges duplicate support
// points by exact coordinate equality, drops zero weights, and requires the
// remaining weights to be positive and sum to 1 within 1e-12.
class Outcome {
 public:
  static Outcome point(const Point& y);
  explicit Outcome(std::vector<std::pair<Point, double>> support);

  const std::vector<std::pair<Point, double>>& support() const { return support_; }
  bool deterministic() const { return support_.size() == 1; }
  const Point& single() const;
  int dimension() const { return support_.front().first.dim; }
  double weight_of(const Point& pt) const;  // 0 if not in support
  bool operator==(const Outcome&) const = default;

 private:
  std::vector<std::pair<Point, double>> support_;
};

// ExpectedMax: E_y[max_i d(x_i, y)]. MaxOfExpected: max_i E_y[d(x_i, y)].
// They coincide on deterministic outcomes; ExpectedMax dominates otherwise.
enum class ObjectiveMode { ExpectedMax, MaxOfExpected };

double distance(const MetricSpec& metric, const Point& a, const Point& b);

// max_i d(x_i, y): the objective being minimized.
double max_cost(const MetricSpec& metric, const Profile& profile, const Point& y);

// Expected distance from one agent to a randomized outcome; the per-agent
// cost used by the incentive definitions.
double expected_agent_cost(const MetricSpec& metric, const Point& agent, const Outcome& outcome);

double expected_objective(const MetricSpec& metric, const Profile& profile,
                          const Outcome& outcome, ObjectiveMode mode);

std::string to_string(SpaceKind kind);
std::string to_string(ObjectiveMode mode);

namespace detail {
double abs_pow(double d, double p);  // |d|^p, fast paths for p in {1,2,3,4}
double root_p(double s, double p);   // s^(1/p)
}  // namespace detail

}  // namespace floc
