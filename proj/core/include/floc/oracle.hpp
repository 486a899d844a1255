#pragma once

#include <cstdint>

#include "floc/geometry.hpp"

namespace floc {

enum class SolveMethod { ClosedForm, ConvexMinimax, Grid };

// 1-center result: the optimal facility location, the optimal maximum cost
// (the radius of the smallest enclosing l_p ball), the method that produced
// it and the tolerance it certifies. The grid method's tolerance is the
// cell-diameter bound step * 2^(1/p).
struct OracleResult {
  Point location;
  double cost = 0.0;
  SolveMethod method = SolveMethod::ClosedForm;
  double tolerance = 0.0;
};

// Prediction error eta = d(o(x), pi) / optimal maximum cost. On a zero-cost
// instance the ratio degenerates: eta is 0 when the prediction hits the
// forced optimum (within tol) and +infinity otherwise.
struct ErrorValue {
  double eta = 0.0;
  bool infinite = false;
};

// Closed form on the line: midpoint of the extremes, cost (x_n - x_1) / 2.
OracleResult optimal_line(const Profile& profile);

// Smallest enclosing l_p ball by nested derivative-free convex search:
// golden section on the first coordinate of g(a) = min_b max_i d_p(x_i, (a,b)),
// with an inner golden section on b. Both levels run over the profile's
// bounding box, which always contains an optimal center. The returned cost is
// within tol of the true minimum; iteration cap 200 per level.
OracleResult optimal_lp_ball(const Profile& profile, const MetricSpec& metric,
                             double tol = 1e-9);

// Default search bounds for the grid solver: the profile's bounding box
// inflated by one profile diameter in total (half per side).
Box default_center_bounds(const Profile& profile, const MetricSpec& metric);

// Exhaustive grid minimizer of the maximum cost; the independent
// verification oracle for the convex solver. Rejects grids larger than
// cell_budget cells.
OracleResult brute_force_center(const Profile& profile, const MetricSpec& metric,
                                const Box& bounds, double step,
                                std::uint64_t cell_budget = 2'000'000'000ULL);

// Dispatches by metric kind: closed form on the line, convex minimax in the
// plane. Callers never pick a solver by hand.
OracleResult optimal_center(const MetricSpec& metric, const Profile& profile,
                            double tol = 1e-9);

ErrorValue prediction_error(const Instance& instance, double tol = 1e-9);

// Largest pairwise distance; 0 for a single agent.
double profile_diameter(const MetricSpec& metric, const Profile& profile);

std::string to_string(SolveMethod method);

}  // namespace floc
