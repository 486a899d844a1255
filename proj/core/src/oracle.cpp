#include "floc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace floc {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr int kGoldenIterationCap = 200;

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  double bracket = 0.0;
  bool converged = true;
};

// Golden-section minimization of a unimodal function on [lo, hi]. Returns the
// best evaluated point, so inexact inner evaluations cannot push the result
// above the values actually seen.
template <typename F>
GoldenResult golden_minimize(const F& f, double lo, double hi, double xtol) {
  if (hi - lo <= xtol) {
    const double m = 0.5 * (lo + hi);
    return {m, f(m), hi - lo, true};
  }
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  int iterations = 0;
  while (b - a > xtol && iterations < kGoldenIterationCap) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      if (f1 < best_f) {
        best_f = f1;
        best_x = x1;
      }
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      if (f2 < best_f) {
        best_f = f2;
        best_x = x2;
      }
    }
    ++iterations;
  }
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (fm < best_f) {
    best_f = fm;
    best_x = m;
  }
  return {best_x, best_f, b - a, b - a <= xtol};
}

// Grid coordinates covering [lo, hi] with spacing <= step, endpoints exact.
std::vector<double> grid_axis(double lo, double hi, double step) {
  std::vector<double> xs;
  if (hi - lo <= 0.0) {
    xs.push_back(lo);
    return xs;
  }
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12)) + 1;
  xs.reserve(count);
  for (std::size_t i = 0; i + 1 < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  xs.push_back(hi);
  return xs;
}

}  // namespace

OracleResult optimal_line(const Profile& profile) {
  if (profile.dimension() != 1) throw input_error("optimal_line expects a line profile");
  const double x1 = profile.line_min();
  const double xn = profile.line_max();
  return {Point::line(0.5 * (x1 + xn)), 0.5 * (xn - x1), SolveMethod::ClosedForm, 0.0};
}

OracleResult optimal_lp_ball(const Profile& profile, const MetricSpec& metric, double tol) {
  if (metric.kind != SpaceKind::Plane)
    throw input_error("optimal_lp_ball expects a plane metric");
  if (profile.dimension() != 2)
    throw input_error("optimal_lp_ball expects plane profiles");
  if (!(tol > 0.0)) throw input_error("solver tolerance must be positive");

  const Box bb = profile.bounding_box();
  // The maximum cost is 1-Lipschitz in each coordinate, so x-brackets of
  // tol/2 per level certify a cost within tol of the minimum.
  const double xtol = 0.5 * tol;

  auto inner = [&](double a) {
    return golden_minimize(
        [&](double b) { return max_cost(metric, profile, Point::plane(a, b)); },
        bb.lo[1], bb.hi[1], xtol);
  };

  const GoldenResult outer =
      golden_minimize([&](double a) { return inner(a).value; }, bb.lo[0], bb.hi[0], xtol);
  const GoldenResult column = inner(outer.x);

  const Point center = Point::plane(outer.x, column.x);
  const double cost = max_cost(metric, profile, center);
  if (!outer.converged || !column.converged)
    throw solver_error("1-center search did not converge within the iteration budget",
                       center.coord[0], center.coord[1], cost);
  return {center, cost, SolveMethod::ConvexMinimax, outer.bracket + column.bracket};
}

Box default_center_bounds(const Profile& profile, const MetricSpec& metric) {
  return profile.bounding_box().inflated(0.5 * profile_diameter(metric, profile));
}

OracleResult brute_force_center(const Profile& profile, const MetricSpec& metric,
                                const Box& bounds, double step,
                                std::uint64_t cell_budget) {
  if (!(step > 0.0)) throw input_error("grid step must be positive");
  if (bounds.dim != metric.dimension() || profile.dimension() != metric.dimension())
    throw input_error("grid bounds dimension does not match the metric");
  const Box required = default_center_bounds(profile, metric);
  if (!bounds.contains(required, 1e-9))
    throw input_error("grid bounds must cover the profile bounding box inflated by its diameter");

  const std::vector<double> as = grid_axis(bounds.lo[0], bounds.hi[0], step);
  const std::vector<double> bs = metric.kind == SpaceKind::Plane
                                     ? grid_axis(bounds.lo[1], bounds.hi[1], step)
                                     : std::vector<double>{0.0};
  const std::uint64_t cells =
      static_cast<std::uint64_t>(as.size()) * static_cast<std::uint64_t>(bs.size());
  if (cells > cell_budget)
    throw input_error("grid of " + std::to_string(cells) + " cells exceeds the budget of " +
                      std::to_string(cell_budget));

  const auto& pts = profile.points();
  double best = std::numeric_limits<double>::infinity();
  double best_a = as.front();
  double best_b = bs.front();

  if (metric.kind == SpaceKind::Line) {
    for (double a : as) {
      double cur = 0.0;
      for (const Point& pt : pts) {
        cur = std::max(cur, std::fabs(pt.coord[0] - a));
        if (cur >= best) break;
      }
      if (cur < best) {
        best = cur;
        best_a = a;
      }
    }
    return {Point::line(best_a), best, SolveMethod::Grid, step};
  }

  // Scan minimizes the p-th power of the maximum distance; the root is
  // monotone so the argmin is unchanged and the hot loop avoids pow roots.
  const double p = metric.p;
  for (double b : bs) {
    for (double a : as) {
      double cur = 0.0;
      for (const Point& pt : pts) {
        const double powsum = detail::abs_pow(pt.coord[0] - a, p) +
                              detail::abs_pow(pt.coord[1] - b, p);
        if (powsum > cur) cur = powsum;
        if (cur >= best) break;
      }
      if (cur < best) {
        best = cur;
        best_a = a;
        best_b = b;
      }
    }
  }
  return {Point::plane(best_a, best_b), detail::root_p(best, p), SolveMethod::Grid,
          step * detail::root_p(2.0, p)};
}

OracleResult optimal_center(const MetricSpec& metric, const Profile& profile, double tol) {
  if (metric.kind == SpaceKind::Line) return optimal_line(profile);
  return optimal_lp_ball(profile, metric, tol);
}

ErrorValue prediction_error(const Instance& instance, double tol) {
  const OracleResult opt = optimal_center(instance.metric, instance.profile, tol);
  const double d = distance(instance.metric, opt.location, instance.prediction);
  if (opt.cost <= tol) {
    if (d <= tol) return {0.0, false};
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {d / opt.cost, false};
}

double profile_diameter(const MetricSpec& metric, const Profile& profile) {
  double diameter = 0.0;
  const auto& pts = profile.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      diameter = std::max(diameter, distance(metric, pts[i], pts[j]));
  return diameter;
}

std::string to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::ClosedForm: return "closed-form";
    case SolveMethod::ConvexMinimax: return "convex-minimax";
    case SolveMethod::Grid: return "grid";
  }
  return "unknown";
}

}  // namespace floc
