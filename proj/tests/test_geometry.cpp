#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "floc/geometry.hpp"
#include "floc/rng.hpp"

using namespace floc;

namespace {

Point random_point(Rng& rng, const MetricSpec& metric, double lo = -5.0, double hi = 5.0) {
  if (metric.kind == SpaceKind::Line) return Point::line(rng.uniform(lo, hi));
  return Point::plane(rng.uniform(lo, hi), rng.uniform(lo, hi));
}

std::vector<MetricSpec> all_metrics() {
  return {MetricSpec::line(), MetricSpec::plane(1.0), MetricSpec::plane(2.0),
          MetricSpec::plane(3.0), MetricSpec::plane(7.0)};
}

}  // namespace

TEST_CASE("metric spec validation") {
  CHECK_THROWS_AS(MetricSpec::plane(0.5), input_error);
  CHECK_THROWS_AS(MetricSpec::plane(std::numeric_limits<double>::infinity()), input_error);
  CHECK_THROWS_AS(MetricSpec::plane(std::nan("")), input_error);
  CHECK(MetricSpec::plane(1.0).dimension() == 2);
  CHECK(MetricSpec::line().dimension() == 1);
}

TEST_CASE("distance examples") {
  CHECK(distance(MetricSpec::line(), Point::line(0), Point::line(2)) == 2.0);
  CHECK(distance(MetricSpec::plane(2), Point::plane(0, 0), Point::plane(3, 4)) == 5.0);
  CHECK(distance(MetricSpec::plane(3), Point::plane(0, 0), Point::plane(1, 1)) ==
        doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(distance(MetricSpec::line(), Point::plane(0, 0), Point::line(1)),
                  input_error);
  CHECK_THROWS_AS(distance(MetricSpec::plane(2), Point::line(0), Point::line(1)),
                  input_error);
}

TEST_CASE("distance is a metric") {
  for (const MetricSpec& metric : all_metrics()) {
    Rng rng = Rng(42).fork({static_cast<std::uint64_t>(metric.kind == SpaceKind::Line
                                                           ? 0
                                                           : metric.p * 8)});
    for (int i = 0; i < 10'000; ++i) {
      const Point a = random_point(rng, metric);
      const Point b = random_point(rng, metric);
      const Point c = random_point(rng, metric);
      const double ab = distance(metric, a, b);
      const double ba = distance(metric, b, a);
      CHECK(ab == ba);  // symmetry, exact
      CHECK(distance(metric, a, a) == 0.0);
      if (!(a == b)) CHECK(ab > 0.0);
      CHECK(ab <= distance(metric, a, c) + distance(metric, c, b) + 1e-12);
    }
  }
}

TEST_CASE("max_cost examples and dominance") {
  const Profile two = Profile::line({0.0, 2.0});
  CHECK(max_cost(MetricSpec::line(), two, Point::line(1)) == 1.0);
  CHECK(max_cost(MetricSpec::line(), two, Point::line(2)) == 2.0);

  // Enumerate the three distances by hand as the oracle for the planar case.
  const MetricSpec m2 = MetricSpec::plane(2);
  const Profile tri = Profile::plane({{0, 0}, {1, 0}, {0, 1}});
  double by_hand = 0.0;
  for (const Point& pt : tri.points())
    by_hand = std::max(by_hand, std::hypot(pt[0] - 0.0, pt[1] - 0.0));
  CHECK(by_hand == 1.0);
  CHECK(max_cost(m2, tri, Point::plane(0, 0)) == by_hand);

  // max over agents dominates each agent, with equality at the argmax.
  Rng rng(7);
  for (const MetricSpec& metric : all_metrics()) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(random_point(rng, metric));
    const Profile profile{std::vector<Point>(pts)};
    const Point y = random_point(rng, metric);
    const double mc = max_cost(metric, profile, y);
    double best = 0.0;
    for (const Point& pt : pts) {
      CHECK(mc >= distance(metric, pt, y));
      best = std::max(best, distance(metric, pt, y));
    }
    CHECK(mc == best);
  }

  CHECK(max_cost(MetricSpec::line(), Profile::line({3, 3}), Point::line(3)) == 0.0);
}

TEST_CASE("outcome construction rules") {
  // duplicates merge, zero weights drop
  const Outcome merged({{Point::line(1), 0.5}, {Point::line(1), 0.5}});
  CHECK(merged.deterministic());
  CHECK(merged.single() == Point::line(1));

  const Outcome dropped({{Point::line(0), 0.0}, {Point::line(1), 1.0}});
  CHECK(dropped.deterministic());

  CHECK_THROWS_AS(Outcome({{Point::line(0), 0.6}, {Point::line(1), 0.6}}), input_error);
  CHECK_THROWS_AS(Outcome({{Point::line(0), -0.1}, {Point::line(1), 1.1}}), input_error);
  CHECK_THROWS_AS(Outcome(std::vector<std::pair<Point, double>>{}), input_error);
  CHECK_THROWS_AS(Outcome({{Point::line(0), 1.0}, {Point::plane(0, 0), 0.0}}),
                  input_error);
  CHECK_THROWS_AS(Outcome({{Point::line(0), 0.5}, {Point::plane(0, 0), 0.5}}),
                  input_error);
}

TEST_CASE("expected objective examples") {
  const MetricSpec line = MetricSpec::line();
  const Profile two = Profile::line({0.0, 2.0});
  const Outcome lrm_like({{Point::line(0), 0.25}, {Point::line(2), 0.25}, {Point::line(1), 0.5}});

  // Oracle: enumerate the 3-point support by hand.
  const double expected_max_by_hand = 0.25 * 2.0 + 0.25 * 2.0 + 0.5 * 1.0;  // = 1.5
  const double agent0 = 0.25 * 0.0 + 0.25 * 2.0 + 0.5 * 1.0;                // = 1.0
  const double agent2 = 0.25 * 2.0 + 0.25 * 0.0 + 0.5 * 1.0;                // = 1.0
  CHECK(expected_objective(line, two, lrm_like, ObjectiveMode::ExpectedMax) ==
        expected_max_by_hand);
  CHECK(expected_objective(line, two, lrm_like, ObjectiveMode::MaxOfExpected) ==
        std::max(agent0, agent2));
  CHECK(expected_objective(line, two, lrm_like, ObjectiveMode::ExpectedMax) == 1.5);
  CHECK(expected_objective(line, two, lrm_like, ObjectiveMode::MaxOfExpected) == 1.0);

  const Outcome degenerate = Outcome::point(Point::line(0.3));
  for (const ObjectiveMode mode : {ObjectiveMode::ExpectedMax, ObjectiveMode::MaxOfExpected})
    CHECK(expected_objective(line, two, degenerate, mode) ==
          max_cost(line, two, Point::line(0.3)));
}

TEST_CASE("expected-max dominates max-of-expected") {
  Rng rng(17);
  for (const MetricSpec& metric : all_metrics()) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Point> pts;
      const int n = 1 + static_cast<int>(rng.below(5));
      for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, metric));
      const Profile profile{std::move(pts)};

      std::vector<std::pair<Point, double>> support;
      const int k = 1 + static_cast<int>(rng.below(4));
      double total = 0.0;
      for (int i = 0; i < k; ++i) {
        const double w = rng.uniform(0.1, 1.0);
        support.emplace_back(random_point(rng, metric), w);
        total += w;
      }
      for (auto& [pt, w] : support) w /= total;
      // renormalize exactly
      double sum = 0.0;
      for (auto& [pt, w] : support) sum += w;
      support.back().second += 1.0 - sum;
      const Outcome outcome(std::move(support));

      const double em = expected_objective(metric, profile, outcome, ObjectiveMode::ExpectedMax);
      const double me = expected_objective(metric, profile, outcome, ObjectiveMode::MaxOfExpected);
      CHECK(em >= me - 1e-12);
      if (outcome.deterministic()) CHECK(em == me);
    }
  }
}

TEST_CASE("profile keeps report order and exposes the sorted view") {
  const Profile profile = Profile::line({2.0, 0.0, 1.0});
  CHECK(profile[0] == Point::line(2.0));
  CHECK(profile.sorted_line() == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(profile.line_min() == 0.0);
  CHECK(profile.line_max() == 2.0);
  CHECK_THROWS_AS(Profile(std::vector<Point>{}), input_error);
  CHECK_THROWS_AS(Profile({Point::line(0), Point::plane(0, 0)}), input_error);
  CHECK(!profile.coincident());
  CHECK(Profile::line({4, 4, 4}).coincident());
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance(MetricSpec::line(), Profile::plane({{0, 0}}), Point::line(0)),
                  input_error);
  CHECK_THROWS_AS(Instance(MetricSpec::line(), Profile::line({0.0}), Point::plane(0, 0)),
                  input_error);
  const Instance ok(MetricSpec::plane(2), Profile::plane({{0, 0}, {1, 1}}), Point::plane(0, 1));
  CHECK(ok.profile.size() == 2);
}
