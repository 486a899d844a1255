#include "floc/instances.hpp"

#include <bit>
#include <cmath>

#include "floc/oracle.hpp"
#include "floc/rng.hpp"

namespace floc {

namespace {

constexpr int kMaxRedraws = 64;
constexpr double kZeroCost = 1e-12;

Point draw_point(Rng& rng, const Box& box) {
  if (box.dim == 1) return Point::line(rng.uniform(box.lo[0], box.hi[0]));
  const double a = rng.uniform(box.lo[0], box.hi[0]);
  const double b = rng.uniform(box.lo[1], box.hi[1]);
  return Point::plane(a, b);
}

// Prediction at l_p distance (eta * cost) from the center. The l_p norm is
// positively homogeneous, so scaling a direction by target / ||u||_p lands
// the distance exactly; no iteration needed.
Point place_prediction(Rng& rng, const MetricSpec& metric, const Point& center,
                       double target) {
  if (metric.kind == SpaceKind::Line) {
    const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
    return Point::line(center.x() + sign * target);
  }
  const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  const double ua = std::cos(angle);
  const double ub = std::sin(angle);
  const double norm = detail::root_p(
      detail::abs_pow(ua, metric.p) + detail::abs_pow(ub, metric.p), metric.p);
  const double scale = target / norm;
  return Point::plane(center[0] + scale * ua, center[1] + scale * ub);
}

}  // namespace

Instance gen_random(const FamilySpec& family) {
  if (family.n < 1) throw input_error("family needs at least one agent");
  if (family.box.dim != family.metric.dimension())
    throw input_error("family box dimension does not match the metric");
  for (int axis = 0; axis < family.box.dim; ++axis)
    if (!(family.box.width(axis) > 0.0))
      throw input_error("family box must be nondegenerate");
  if (family.eta_target && !(*family.eta_target >= 0.0))
    throw input_error("eta target must be nonnegative");

  const Rng root(family.seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Rng rng = root.fork({static_cast<std::uint64_t>(attempt)});
    std::vector<Point> agents;
    agents.reserve(static_cast<std::size_t>(family.n));
    for (int i = 0; i < family.n; ++i) agents.push_back(draw_point(rng, family.box));
    Profile profile(std::move(agents));

    if (!family.eta_target) {
      Box wide = family.box;
      for (int axis = 0; axis < wide.dim; ++axis) {
        const auto i = static_cast<std::size_t>(axis);
        const double w = wide.hi[i] - wide.lo[i];
        wide.lo[i] -= w;
        wide.hi[i] += w;
      }
      const Point pi = draw_point(rng, wide);
      return Instance(family.metric, std::move(profile), pi);
    }

    const OracleResult opt = optimal_center(family.metric, profile);
    if (opt.cost <= kZeroCost) {
      if (*family.eta_target == 0.0)
        return Instance(family.metric, std::move(profile), opt.location);
      continue;  // redraw: positive error is unreachable on a zero-cost draw
    }
    const Point pi =
        place_prediction(rng, family.metric, opt.location, *family.eta_target * opt.cost);
    return Instance(family.metric, std::move(profile), pi);
  }
  throw input_error("family kept drawing zero-cost profiles with a positive eta target");
}

InstanceGenerator family_generator(FamilySpec base) {
  return [base](double eta_target, std::uint64_t trial) {
    FamilySpec spec = base;
    spec.eta_target = eta_target;
    spec.seed = Rng::derive(base.seed, {std::bit_cast<std::uint64_t>(eta_target), trial});
    return gen_random(spec);
  };
}

Instance fixture_minmaxp_tight(double eta) {
  if (!(eta >= 0.0)) throw input_error("eta must be nonnegative");
  return Instance(MetricSpec::line(), Profile::line({0.0, 2.0}), Point::line(1.0 + eta));
}

std::pair<Instance, Instance> fixture_rand_lb() {
  return {Instance(MetricSpec::line(), Profile::line({0.0, 2.0}), Point::line(1.0)),
          Instance(MetricSpec::line(), Profile::line({0.0, 4.0}), Point::line(1.0))};
}

Instance fixture_bbox_tight(double p, double eta) {
  if (!(p >= 2.0)) throw input_error("bbox_tight needs p >= 2");
  if (!(eta >= 0.0)) throw input_error("eta must be nonnegative");
  const double c = std::pow(2.0, -1.0 / p);  // 2^(-1/p): the diagonal unit-circle point
  const double t = eta * c;                  // equals (eta^p / 2)^(1/p)
  return Instance(MetricSpec::plane(p),
                  Profile::plane({{-c, -c}, {0.0, 1.0}, {1.0, 0.0}}),
                  Point::plane(t, t));
}

Instance fixture_cm_tight(double p) {
  // Optimum is the diagonal midpoint at radius 2^(1/p)/2; CoordMedian sits on
  // the doubled agent and pays 2^(1/p). The prediction is the optimum itself
  // (CoordMedian ignores it).
  return Instance(MetricSpec::plane(p),
                  Profile::plane({{0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}}),
                  Point::plane(0.5, 0.5));
}

std::pair<Instance, Deviation> fixture_lrm_sgsp() {
  Instance instance(MetricSpec::line(), Profile::line({0.0, 1.0, 2.0}), Point::line(1.0));
  Deviation deviation;
  deviation.coalition = {0, 1, 2};
  deviation.misreports = {Point::line(1.0), Point::line(1.0), Point::line(1.0)};
  deviation.deltas = {0.0, 0.5, 0.0};
  deviation.note = "all agents report the middle location";
  return {std::move(instance), std::move(deviation)};
}

std::vector<Instance> fixture_sgsp_moving(int steps) {
  if (steps < 0) throw input_error("step count must be nonnegative");
  std::vector<Instance> series;
  series.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k)
    series.emplace_back(MetricSpec::line(),
                        Profile::line({0.0, 1.0, 2.0 + 0.01 * k}),
                        Point::line(0.0));
  return series;
}

Instance make_fixture(const std::string& name, const FixtureParams& params) {
  if (name == "minmaxp_tight") return fixture_minmaxp_tight(params.eta);
  if (name == "rand_lb") {
    auto [near, far] = fixture_rand_lb();
    if (params.index == 0) return near;
    if (params.index == 1) return far;
    throw input_error("rand_lb has indices 0 and 1");
  }
  if (name == "bbox_tight") return fixture_bbox_tight(params.p, params.eta);
  if (name == "cm_tight") return fixture_cm_tight(params.p);
  if (name == "lrm_sgsp") return fixture_lrm_sgsp().first;
  if (name == "sgsp_moving") {
    auto series = fixture_sgsp_moving(params.k);
    return series.back();
  }
  throw input_error("unknown fixture: " + name);
}

std::vector<std::string> fixture_names() {
  return {"minmaxp_tight", "rand_lb", "bbox_tight", "cm_tight", "lrm_sgsp", "sgsp_moving"};
}

}  // namespace floc
