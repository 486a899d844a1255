#include "floc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> probe_axis(double lo, double hi, double step) {
  std::vector<double> xs;
  const auto count = hi - lo <= 0.0
                         ? std::size_t{1}
                         : static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12)) + 1;
  xs.reserve(count);
  for (std::size_t i = 0; i + 1 < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  xs.push_back(hi);
  return xs;
}

}  // namespace

RatioReport approx_ratio(const MechanismSpec& spec, const Instance& instance,
                         ObjectiveMode mode, double tol) {
  const OracleResult opt = optimal_center(instance.metric, instance.profile, tol);
  const Outcome outcome = run(spec, instance);
  const double cost = expected_objective(instance.metric, instance.profile, outcome, mode);

  RatioReport report;
  report.mechanism_cost = cost;
  report.optimal_cost = opt.cost;
  report.mode = mode;

  const double miss = distance(instance.metric, opt.location, instance.prediction);
  if (opt.cost <= tol) {
    report.eta = miss <= tol ? ErrorValue{0.0, false} : ErrorValue{kInf, true};
    report.ratio = cost <= tol ? 1.0 : kInf;
  } else {
    report.eta = ErrorValue{miss / opt.cost, false};
    report.ratio = cost / opt.cost;
  }
  return report;
}

bool has_closed_form_bound(MechanismId id) {
  return id != MechanismId::RandLine1C2R;
}

double closed_form_bound(const MechanismSpec& spec, double eta, double p) {
  const MechanismSpec checked = MechanismSpec::make(spec.id, spec.q);
  if (!(eta >= 0.0)) throw input_error("eta must be nonnegative");
  if (!is_line_mechanism(checked.id) && !(p >= 1.0))
    throw input_error("plane bounds need the l_p exponent");
  switch (checked.id) {
    case MechanismId::MinMaxP:
      return 1.0 + std::min(1.0, eta);
    case MechanismId::Median:
      return 2.0;
    case MechanismId::LRM:
      return 1.5;
    case MechanismId::MixedLine:
      return 1.0 + 0.5 * *checked.q + (1.0 - *checked.q) * std::min(1.0, eta);
    case MechanismId::BoundingBox:
      return 1.0 + std::min(eta, detail::root_p(2.0, p));
    case MechanismId::CoordMedian:
      return 2.0;
    case MechanismId::Mixed2D:
      return 1.0 + *checked.q +
             (1.0 - *checked.q) * std::min(detail::root_p(2.0, p), eta);
    case MechanismId::RandLine1C2R:
      throw input_error("RandLine1C2R carries no closed-form error bound");
  }
  throw input_error("unknown mechanism id");
}

std::vector<CurvePoint> gamma_sweep(const MechanismSpec& spec, const MetricSpec& metric,
                                    const InstanceGenerator& generator,
                                    std::span<const double> eta_grid, int trials,
                                    ObjectiveMode mode, double tol) {
  if (trials < 0) throw input_error("trial count must be nonnegative");
  const bool bounded = has_closed_form_bound(spec.id);
  std::vector<CurvePoint> curve;
  curve.reserve(eta_grid.size());
  for (const double eta : eta_grid) {
    CurvePoint cp;
    cp.eta = eta;
    cp.trials = trials;
    cp.bound = bounded ? closed_form_bound(spec, eta, metric.p) : kNaN;
    if (trials == 0) {
      cp.worst_ratio = kNaN;
      cp.mean_ratio = kNaN;
    } else {
      double worst = 0.0;
      double sum = 0.0;
      for (int trial = 0; trial < trials; ++trial) {
        const Instance instance = generator(eta, static_cast<std::uint64_t>(trial));
        if (!(instance.metric == metric))
          throw input_error("generator produced an instance in the wrong space");
        const RatioReport report = approx_ratio(spec, instance, mode, tol);
        worst = std::max(worst, report.ratio);
        sum += report.ratio;
      }
      cp.worst_ratio = worst;
      cp.mean_ratio = sum / trials;
    }
    curve.push_back(cp);
  }
  return curve;
}

RatioReport robustness_probe(const MechanismSpec& spec, const MetricSpec& metric,
                             const Profile& profile, const ProbeGrid& grid,
                             ObjectiveMode mode, double tol) {
  if (!(grid.step > 0.0)) throw input_error("probe step must be positive");
  if (grid.box.dim != metric.dimension())
    throw input_error("probe box dimension does not match the metric");
  const Box required =
      profile.bounding_box().inflated(profile_diameter(metric, profile));
  if (!grid.box.contains(required, 1e-9))
    throw input_error("probe grid must cover the profile region inflated by one diameter");

  const OracleResult opt = optimal_center(metric, profile, tol);
  const std::vector<double> as = probe_axis(grid.box.lo[0], grid.box.hi[0], grid.step);
  const std::vector<double> bs = metric.kind == SpaceKind::Plane
                                     ? probe_axis(grid.box.lo[1], grid.box.hi[1], grid.step)
                                     : std::vector<double>{0.0};

  double worst_cost = -kInf;
  Point worst_pi = metric.kind == SpaceKind::Plane ? Point::plane(as.front(), bs.front())
                                                   : Point::line(as.front());
  for (const double b : bs) {
    for (const double a : as) {
      const Point pi =
          metric.kind == SpaceKind::Plane ? Point::plane(a, b) : Point::line(a);
      const Instance instance(metric, profile, pi);
      const Outcome outcome = run(spec, instance);
      const double cost = expected_objective(metric, profile, outcome, mode);
      if (cost > worst_cost) {
        worst_cost = cost;
        worst_pi = pi;
      }
    }
  }

  RatioReport report;
  report.mechanism_cost = worst_cost;
  report.optimal_cost = opt.cost;
  report.mode = mode;
  const double miss = distance(metric, opt.location, worst_pi);
  if (opt.cost <= tol) {
    report.eta = miss <= tol ? ErrorValue{0.0, false} : ErrorValue{kInf, true};
    report.ratio = worst_cost <= tol ? 1.0 : kInf;
  } else {
    report.eta = ErrorValue{miss / opt.cost, false};
    report.ratio = worst_cost / opt.cost;
  }
  return report;
}

}  // namespace floc
