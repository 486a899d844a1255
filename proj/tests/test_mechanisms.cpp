#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "floc/mechanisms.hpp"
#include "floc/rng.hpp"

using namespace floc;

namespace {

const MetricSpec kLine = MetricSpec::line();
const MetricSpec kL22 = MetricSpec::plane(2);

std::vector<MechanismSpec> all_specs() {
  return {MechanismSpec::make(MechanismId::MinMaxP),
          MechanismSpec::make(MechanismId::Median),
          MechanismSpec::make(MechanismId::LRM),
          MechanismSpec::make(MechanismId::MixedLine, 0.5),
          MechanismSpec::make(MechanismId::RandLine1C2R),
          MechanismSpec::make(MechanismId::BoundingBox),
          MechanismSpec::make(MechanismId::CoordMedian),
          MechanismSpec::make(MechanismId::Mixed2D, 0.5)};
}

Instance random_instance(Rng& rng, const MetricSpec& metric, int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back(metric.kind == SpaceKind::Line
                      ? Point::line(rng.uniform(-2, 2))
                      : Point::plane(rng.uniform(-2, 2), rng.uniform(-2, 2)));
  const Point pi = metric.kind == SpaceKind::Line
                       ? Point::line(rng.uniform(-4, 4))
                       : Point::plane(rng.uniform(-4, 4), rng.uniform(-4, 4));
  return Instance(metric, Profile(std::move(pts)), pi);
}

}  // namespace

TEST_CASE("mechanism spec validation and names") {
  CHECK_THROWS_AS(MechanismSpec::make(MechanismId::MixedLine), input_error);
  CHECK_THROWS_AS(MechanismSpec::make(MechanismId::MixedLine, 1.5), input_error);
  CHECK_THROWS_AS(MechanismSpec::make(MechanismId::MinMaxP, 0.5), input_error);
  CHECK(MechanismSpec::make(MechanismId::Mixed2D, 0.0).q == 0.0);

  for (const MechanismSpec& spec : all_specs())
    CHECK(mechanism_id_from_string(to_string(spec.id)) == spec.id);
  CHECK_THROWS_AS(mechanism_id_from_string("Nope"), input_error);
}

TEST_CASE("minmaxp clamps the prediction") {
  const Profile two = Profile::line({0, 2});
  CHECK(minmaxp(two, Point::line(1)).single() == Point::line(1));
  CHECK(minmaxp(two, Point::line(3)).single() == Point::line(2));
  CHECK(minmaxp(Profile::line({5, 5, 5}), Point::line(9)).single() == Point::line(5));
}

TEST_CASE("median_line takes the left median") {
  CHECK(median_line(Profile::line({0, 1, 2})).single() == Point::line(1));
  CHECK(median_line(Profile::line({0, 2})).single() == Point::line(0));
  CHECK(median_line(Profile::line({7})).single() == Point::line(7));
}

TEST_CASE("lrm support and probabilities") {
  const Outcome out = lrm(Profile::line({0, 2}));
  CHECK(out.support().size() == 3);
  CHECK(out.weight_of(Point::line(0)) == 0.25);
  CHECK(out.weight_of(Point::line(2)) == 0.25);
  CHECK(out.weight_of(Point::line(1)) == 0.5);
  CHECK(expected_objective(kLine, Profile::line({0, 2}), out, ObjectiveMode::ExpectedMax) ==
        1.5);
  CHECK(lrm(Profile::line({3, 3})) == Outcome::point(Point::line(3)));
}

TEST_CASE("rand_line_1c2r branches") {
  const Profile two = Profile::line({0, 2});
  CHECK(rand_line_1c2r(two, Point::line(1)) == Outcome::point(Point::line(1)));

  const Outcome left = rand_line_1c2r(two, Point::line(-0.5));  // t = 0.25
  CHECK(left.weight_of(Point::line(0)) == 0.75);
  CHECK(left.weight_of(Point::line(2)) == 0.25);

  const Outcome far = rand_line_1c2r(two, Point::line(-3));  // t = 1.5, capped
  CHECK(far.weight_of(Point::line(0)) == 0.5);
  CHECK(far.weight_of(Point::line(2)) == 0.5);
  CHECK(expected_objective(kLine, two, far, ObjectiveMode::ExpectedMax) == 2.0);

  const Outcome right = rand_line_1c2r(two, Point::line(2.5));  // mirrored, t = 0.25
  CHECK(right.weight_of(Point::line(2)) == 0.75);
  CHECK(right.weight_of(Point::line(0)) == 0.25);

  CHECK(rand_line_1c2r(Profile::line({4, 4}), Point::line(9)) ==
        Outcome::point(Point::line(4)));
}

TEST_CASE("mixed_line merges branch supports") {
  const Profile two = Profile::line({0, 2});
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Point pi = Point::line(rng.uniform(-4, 4));
    CHECK(mixed_line(two, pi, 0.0) == minmaxp(two, pi));
    CHECK(mixed_line(two, pi, 1.0) == lrm(two));
  }
  const Outcome mixed = mixed_line(two, Point::line(3), 0.5);
  CHECK(mixed.weight_of(Point::line(2)) == 0.5 + 0.125);
  CHECK(mixed.weight_of(Point::line(0)) == 0.125);
  CHECK(mixed.weight_of(Point::line(1)) == 0.25);
}

TEST_CASE("bounding_box clamps per coordinate") {
  const Profile corners = Profile::plane({{0, 0}, {2, 2}});
  CHECK(bounding_box(corners, Point::plane(1, 1)).single() == Point::plane(1, 1));
  CHECK(bounding_box(corners, Point::plane(1, 3)).single() == Point::plane(1, 2));
  CHECK(bounding_box(corners, Point::plane(-1, 3)).single() == Point::plane(0, 2));
}

TEST_CASE("coord_median per coordinate") {
  CHECK(coord_median(Profile::plane({{0, 0}, {1, 0}, {0, 1}})).single() ==
        Point::plane(0, 0));
  const Profile stacked = Profile::plane({{0, 0}, {0, 0}, {1, 1}});
  CHECK(coord_median(stacked).single() == Point::plane(0, 0));
  CHECK(max_cost(kL22, stacked, coord_median(stacked).single()) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(coord_median(Profile::plane({{3, 7}})).single() == Point::plane(3, 7));
}

TEST_CASE("mixed_2d merges coincident branch outputs") {
  const Profile corners = Profile::plane({{0, 0}, {2, 2}});
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Point pi = Point::plane(rng.uniform(-3, 3), rng.uniform(-3, 3));
    CHECK(mixed_2d(corners, pi, 0.0) == bounding_box(corners, pi));
    CHECK(mixed_2d(corners, pi, 1.0) == coord_median(corners));
  }
  const Outcome mixed = mixed_2d(corners, Point::plane(1, 3), 0.5);
  CHECK(mixed.support().size() == 2);
  CHECK(mixed.weight_of(Point::plane(1, 2)) == 0.5);   // clamp branch
  CHECK(mixed.weight_of(Point::plane(0, 0)) == 0.5);   // left medians of {0,2}
  // coincident branches merge
  const Outcome merged = mixed_2d(corners, Point::plane(0, 0), 0.3);
  CHECK(merged.deterministic());
  CHECK(merged.single() == Point::plane(0, 0));
}

TEST_CASE("run dispatches and rejects space mismatches") {
  const Instance line_inst(kLine, Profile::line({0, 2}), Point::line(1));
  const Instance plane_inst(kL22, Profile::plane({{0, 0}, {2, 2}}), Point::plane(1, 1));

  CHECK(run(MechanismSpec::make(MechanismId::MinMaxP), line_inst) ==
        Outcome::point(Point::line(1)));
  CHECK_THROWS_AS(run(MechanismSpec::make(MechanismId::MinMaxP), plane_inst), input_error);
  CHECK_THROWS_AS(run(MechanismSpec::make(MechanismId::BoundingBox), line_inst),
                  input_error);

  // prediction-free ids ignore pi
  const Instance shifted(kLine, Profile::line({0, 2}), Point::line(-100));
  CHECK(run(MechanismSpec::make(MechanismId::LRM), line_inst) ==
        run(MechanismSpec::make(MechanismId::LRM), shifted));

  const Outcome mixed = run(MechanismSpec::make(MechanismId::Mixed2D, 0.3), plane_inst);
  double total = 0.0;
  for (const auto& [pt, w] : mixed.support()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed.weight_of(Point::plane(1, 1)) == 0.7);
}

TEST_CASE("unanimity on coincident profiles") {
  const Instance line_inst(kLine, Profile::line({4, 4, 4}), Point::line(9));
  const Instance plane_inst(kL22, Profile::plane({{4, 4}, {4, 4}, {4, 4}}),
                            Point::plane(9, -9));
  for (const MechanismSpec& spec : all_specs()) {
    const Instance& inst = is_line_mechanism(spec.id) ? line_inst : plane_inst;
    const Outcome out = run(spec, inst);
    CHECK(out.deterministic());
    CHECK(out.single() == inst.profile[0]);
  }
}

TEST_CASE("outputs stay in the agents' range") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance line_inst = random_instance(rng, kLine, 1 + static_cast<int>(rng.below(6)));
    const Box line_box = line_inst.profile.bounding_box();
    for (const MechanismSpec& spec : all_specs()) {
      if (!is_line_mechanism(spec.id)) continue;
      const Outcome out = run(spec, line_inst);
      for (const auto& [pt, w] : out.support()) CHECK(line_box.contains(pt));
    }
    const Instance plane_inst = random_instance(rng, kL22, 1 + static_cast<int>(rng.below(6)));
    const Box plane_box = plane_inst.profile.bounding_box();
    for (const MechanismSpec& spec : all_specs()) {
      if (is_line_mechanism(spec.id)) continue;
      const Outcome out = run(spec, plane_inst);
      for (const auto& [pt, w] : out.support()) CHECK(plane_box.contains(pt));
    }
  }
}

TEST_CASE("minmaxp and median are uncompromising") {
  Rng rng(31);
  for (const MechanismId id : {MechanismId::MinMaxP, MechanismId::Median}) {
    const MechanismSpec spec = MechanismSpec::make(id);
    for (int trial = 0; trial < 60; ++trial) {
      const Instance inst = random_instance(rng, kLine, 2 + static_cast<int>(rng.below(5)));
      const double y = run(spec, inst).single().x();
      for (int agent = 0; agent < inst.profile.size(); ++agent) {
        const double xi = inst.profile[agent].x();
        if (xi == y) continue;
        for (int step = 0; step <= 20; ++step) {
          // sweep reports on the agent's side of y, out to far away
          const double m = xi > y ? y + step * 0.4 : y - step * 0.4;
          Profile moved = inst.profile;
          moved.set_point(agent, Point::line(m));
          const Instance deviated(kLine, moved, inst.prediction);
          CHECK(run(spec, deviated).single().x() == y);
        }
      }
    }
  }
}

TEST_CASE("anonymity: permuting the profile never changes the outcome") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    for (const MechanismSpec& spec : all_specs()) {
      const MetricSpec metric = is_line_mechanism(spec.id) ? kLine : kL22;
      const Instance inst = random_instance(rng, metric, 2 + static_cast<int>(rng.below(5)));
      std::vector<Point> shuffled = inst.profile.points();
      for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
      const Instance permuted(metric, Profile(std::move(shuffled)), inst.prediction);
      CHECK(run(spec, inst) == run(spec, permuted));
    }
  }
}

TEST_CASE("mixture objectives are linear in the branch objectives") {
  Rng rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const double q = rng.next_double();

    const Instance li = random_instance(rng, kLine, 2 + static_cast<int>(rng.below(5)));
    const double em_mix = expected_objective(
        kLine, li.profile, mixed_line(li.profile, li.prediction, q), ObjectiveMode::ExpectedMax);
    const double em_a = expected_objective(kLine, li.profile,
                                           minmaxp(li.profile, li.prediction),
                                           ObjectiveMode::ExpectedMax);
    const double em_b =
        expected_objective(kLine, li.profile, lrm(li.profile), ObjectiveMode::ExpectedMax);
    CHECK(em_mix == doctest::Approx((1 - q) * em_a + q * em_b).epsilon(1e-12));

    const double me_mix = expected_objective(kLine, li.profile,
                                             mixed_line(li.profile, li.prediction, q),
                                             ObjectiveMode::MaxOfExpected);
    const double me_a = expected_objective(kLine, li.profile,
                                           minmaxp(li.profile, li.prediction),
                                           ObjectiveMode::MaxOfExpected);
    const double me_b =
        expected_objective(kLine, li.profile, lrm(li.profile), ObjectiveMode::MaxOfExpected);
    // On the line both LRM extremes tie for the per-agent maximum, so the
    // maxima are attained jointly and equality holds.
    CHECK(me_mix == doctest::Approx((1 - q) * me_a + q * me_b).epsilon(1e-12));

    const Instance pi = random_instance(rng, kL22, 2 + static_cast<int>(rng.below(5)));
    const double pem_mix = expected_objective(
        kL22, pi.profile, mixed_2d(pi.profile, pi.prediction, q), ObjectiveMode::ExpectedMax);
    const double pem_a = expected_objective(kL22, pi.profile,
                                            bounding_box(pi.profile, pi.prediction),
                                            ObjectiveMode::ExpectedMax);
    const double pem_b =
        expected_objective(kL22, pi.profile, coord_median(pi.profile), ObjectiveMode::ExpectedMax);
    CHECK(pem_mix == doctest::Approx((1 - q) * pem_a + q * pem_b).epsilon(1e-12));

    // Max-of-expected only sub-distributes in the plane: the two branches can
    // peak at different agents.
    const double pme_mix = expected_objective(
        kL22, pi.profile, mixed_2d(pi.profile, pi.prediction, q), ObjectiveMode::MaxOfExpected);
    const double pme_a = expected_objective(kL22, pi.profile,
                                            bounding_box(pi.profile, pi.prediction),
                                            ObjectiveMode::MaxOfExpected);
    const double pme_b =
        expected_objective(kL22, pi.profile, coord_median(pi.profile), ObjectiveMode::MaxOfExpected);
    CHECK(pme_mix <= (1 - q) * pme_a + q * pme_b + 1e-12);
  }

  // Witness that plane max-of-expected linearity genuinely fails: BoundingBox
  // peaks at agent 1 while CoordMedian peaks at agent 2.
  const Profile skew = Profile::plane({{0, 0}, {12, 0}, {5, 9}, {5, 1}});
  const Point origin = Point::plane(0, 0);
  const double mix_cost = expected_objective(kL22, skew, mixed_2d(skew, origin, 0.5),
                                             ObjectiveMode::MaxOfExpected);
  const double linear =
      0.5 * expected_objective(kL22, skew, bounding_box(skew, origin),
                               ObjectiveMode::MaxOfExpected) +
      0.5 * expected_objective(kL22, skew, coord_median(skew), ObjectiveMode::MaxOfExpected);
  CHECK(mix_cost < linear - 0.5);
}

TEST_CASE("prediction-free mechanisms ignore the prediction") {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance li = random_instance(rng, kLine, 2 + static_cast<int>(rng.below(5)));
    const Instance li2(kLine, li.profile, Point::line(rng.uniform(-50, 50)));
    for (const MechanismId id : {MechanismId::Median, MechanismId::LRM})
      CHECK(run(MechanismSpec::make(id), li) == run(MechanismSpec::make(id), li2));

    const Instance pi = random_instance(rng, kL22, 2 + static_cast<int>(rng.below(5)));
    const Instance pi2(kL22, pi.profile, Point::plane(rng.uniform(-50, 50), rng.uniform(-50, 50)));
    CHECK(run(MechanismSpec::make(MechanismId::CoordMedian), pi) ==
          run(MechanismSpec::make(MechanismId::CoordMedian), pi2));
  }
}
