#include "floc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "floc/oracle.hpp"

namespace floc {

namespace {

// Misreport candidates for one instance: a fine per-coordinate grid over the
// bounding region inflated by one diameter, a coarse grid for coalition
// members, and the exact special points {x_j, pi, o(x)} injected into both.
// Profitable manipulations tend to land on another agent's report, the
// prediction, or the optimum; injection guarantees those are searched.
struct SearchGrid {
  std::array<std::vector<double>, 2> fine;
  std::array<std::vector<double>, 2> coarse;
  Box region;
  int dim = 1;
  double step = 0.0;
  double coarse_step = 0.0;

  std::vector<Point> product(const std::array<std::vector<double>, 2>& axes) const {
    std::vector<Point> pts;
    if (dim == 1) {
      pts.reserve(axes[0].size());
      for (double a : axes[0]) pts.push_back(Point::line(a));
      return pts;
    }
    pts.reserve(axes[0].size() * axes[1].size());
    for (double b : axes[1])
      for (double a : axes[0]) pts.push_back(Point::plane(a, b));
    return pts;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "step=" << step << " coarse_step=" << coarse_step << " region=";
    for (int axis = 0; axis < dim; ++axis) {
      const auto i = static_cast<std::size_t>(axis);
      os << (axis ? "x" : "") << "[" << region.lo[i] << "," << region.hi[i] << "]";
    }
    return os.str();
  }
};

std::vector<double> stepped_axis(double lo, double hi, double step) {
  std::vector<double> xs;
  if (hi - lo <= 0.0) {
    xs.push_back(lo);
    return xs;
  }
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12)) + 1;
  xs.reserve(count + 4);
  for (std::size_t i = 0; i + 1 < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  xs.push_back(hi);
  return xs;
}

void finish_axis(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

SearchGrid build_grid(const Instance& instance, const AuditOptions& opt) {
  const MetricSpec& metric = instance.metric;
  const Profile& profile = instance.profile;
  SearchGrid grid;
  grid.dim = metric.dimension();

  const double diameter = profile_diameter(metric, profile);
  const double span = diameter > 0.0 ? diameter : 1.0;
  grid.step = opt.step.value_or(diameter > 0.0 ? diameter / 40.0 : 0.05);
  grid.coarse_step = opt.coarse_step.value_or(diameter > 0.0 ? diameter / 4.0 : 0.5);
  if (!(grid.step > 0.0) || !(grid.coarse_step > 0.0))
    throw input_error("audit grid steps must be positive");
  grid.region = opt.region.value_or(profile.bounding_box().inflated(span));
  if (grid.region.dim != grid.dim) throw input_error("audit region dimension mismatch");

  std::vector<Point> specials = profile.points();
  specials.push_back(instance.prediction);
  specials.push_back(optimal_center(metric, profile, opt.tol).location);

  for (int axis = 0; axis < grid.dim; ++axis) {
    const auto i = static_cast<std::size_t>(axis);
    grid.fine[i] = stepped_axis(grid.region.lo[i], grid.region.hi[i], grid.step);
    grid.coarse[i] = stepped_axis(grid.region.lo[i], grid.region.hi[i], grid.coarse_step);
    for (const Point& sp : specials) {
      grid.fine[i].push_back(sp[axis]);
      grid.coarse[i].push_back(sp[axis]);
    }
    finish_axis(grid.fine[i]);
    finish_axis(grid.coarse[i]);
  }
  return grid;
}

// Visits coalitions of exactly `size` agents in lexicographic order.
template <typename Visit>
bool for_each_coalition(int n, int size, const Visit& visit) {
  std::vector<int> members(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) members[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!visit(members)) return false;
    int slot = size - 1;
    while (slot >= 0 && members[static_cast<std::size_t>(slot)] == n - size + slot) --slot;
    if (slot < 0) return true;
    ++members[static_cast<std::size_t>(slot)];
    for (int j = slot + 1; j < size; ++j)
      members[static_cast<std::size_t>(j)] = members[static_cast<std::size_t>(j - 1)] + 1;
  }
}

AuditReport coalition_audit(const MechanismFn& mechanism, const Instance& instance,
                            const AuditOptions& opt, AuditProperty property) {
  const MetricSpec& metric = instance.metric;
  const Profile& profile = instance.profile;
  const int n = profile.size();
  const SearchGrid grid = build_grid(instance, opt);

  const Outcome truthful = mechanism(profile, instance.prediction);
  std::vector<double> true_cost(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    true_cost[static_cast<std::size_t>(i)] =
        expected_agent_cost(metric, profile[i], truthful);

  AuditReport report;
  report.property = property;
  report.grid_spec = grid.describe();

  const int max_size =
      property == AuditProperty::SP ? 1 : std::min(opt.max_coalition, n);
  if (max_size < 1) throw input_error("max_coalition must be at least 1");

  const std::vector<Point> fine_pts = grid.product(grid.fine);
  const std::vector<Point> coarse_pts = grid.product(grid.coarse);

  Profile work = profile;
  std::vector<double> deltas;
  bool stop = false;

  for (int size = 1; size <= max_size && !stop; ++size) {
    const std::vector<Point>& candidates = size == 1 ? fine_pts : coarse_pts;
    const std::size_t base = candidates.size();
    stop = !for_each_coalition(n, size, [&](const std::vector<int>& members) {
      std::vector<std::size_t> odometer(static_cast<std::size_t>(size), 0);
      while (true) {
        bool all_truthful = true;
        for (int j = 0; j < size; ++j) {
          const Point& pick = candidates[odometer[static_cast<std::size_t>(j)]];
          if (!(pick == profile[members[static_cast<std::size_t>(j)]])) {
            all_truthful = false;
            break;
          }
        }
        if (!all_truthful) {
          if (report.cells_searched >= opt.cell_cap) {
            report.complete = false;
            return false;
          }
          ++report.cells_searched;
          for (int j = 0; j < size; ++j)
            work.set_point(members[static_cast<std::size_t>(j)],
                           candidates[odometer[static_cast<std::size_t>(j)]]);
          const Outcome deviated = mechanism(work, instance.prediction);
          deltas.clear();
          bool any_gain = false;
          bool all_gain = true;
          bool none_worse = true;
          for (int j = 0; j < size; ++j) {
            const int agent = members[static_cast<std::size_t>(j)];
            const double delta =
                true_cost[static_cast<std::size_t>(agent)] -
                expected_agent_cost(metric, profile[agent], deviated);
            deltas.push_back(delta);
            if (delta > opt.tol) any_gain = true;
            else all_gain = false;
            if (delta < -opt.tol) none_worse = false;
          }
          for (int j = 0; j < size; ++j) {
            const int agent = members[static_cast<std::size_t>(j)];
            work.set_point(agent, profile[agent]);
          }
          const bool violation = property == AuditProperty::SGSP
                                     ? (none_worse && any_gain)
                                     : all_gain;
          if (violation) {
            Deviation witness;
            witness.coalition = members;
            for (int j = 0; j < size; ++j)
              witness.misreports.push_back(
                  candidates[odometer[static_cast<std::size_t>(j)]]);
            witness.deltas = deltas;
            report.violations.push_back(std::move(witness));
            if (report.violations.size() >= opt.max_witnesses) return false;
          }
        }
        int slot = size - 1;
        while (slot >= 0 && odometer[static_cast<std::size_t>(slot)] + 1 == base) {
          odometer[static_cast<std::size_t>(slot)] = 0;
          --slot;
        }
        if (slot < 0) break;
        ++odometer[static_cast<std::size_t>(slot)];
      }
      return true;
    });
  }
  return report;
}

void check_space(const MechanismSpec& spec, const Instance& instance) {
  if (is_line_mechanism(spec.id) != (instance.metric.kind == SpaceKind::Line))
    throw input_error(to_string(spec.id) + " does not act on " +
                      to_string(instance.metric.kind) + " instances");
}

}  // namespace

MechanismFn mechanism_fn(const MechanismSpec& spec) {
  const MechanismSpec checked = MechanismSpec::make(spec.id, spec.q);
  return [checked](const Profile& profile, const Point& prediction) {
    switch (checked.id) {
      case MechanismId::MinMaxP: return minmaxp(profile, prediction);
      case MechanismId::Median: return median_line(profile);
      case MechanismId::LRM: return lrm(profile);
      case MechanismId::MixedLine: return mixed_line(profile, prediction, *checked.q);
      case MechanismId::RandLine1C2R: return rand_line_1c2r(profile, prediction);
      case MechanismId::BoundingBox: return bounding_box(profile, prediction);
      case MechanismId::CoordMedian: return coord_median(profile);
      case MechanismId::Mixed2D: return mixed_2d(profile, prediction, *checked.q);
    }
    throw input_error("unknown mechanism id");
  };
}

Outcome mean_of_reports(const Profile& profile, const Point&) {
  double a = 0.0;
  double b = 0.0;
  for (const Point& pt : profile.points()) {
    a += pt.coord[0];
    b += pt.coord[1];
  }
  const double n = profile.size();
  if (profile.dimension() == 1) return Outcome::point(Point::line(a / n));
  return Outcome::point(Point::plane(a / n, b / n));
}

std::string to_string(AuditProperty property) {
  switch (property) {
    case AuditProperty::SP: return "sp";
    case AuditProperty::GSP: return "gsp";
    case AuditProperty::SGSP: return "sgsp";
    case AuditProperty::Uncompromising: return "uncompromising";
    case AuditProperty::Unanimity: return "unanimity";
    case AuditProperty::Range: return "range";
  }
  return "unknown";
}

AuditProperty audit_property_from_string(const std::string& name) {
  if (name == "sp") return AuditProperty::SP;
  if (name == "gsp") return AuditProperty::GSP;
  if (name == "sgsp") return AuditProperty::SGSP;
  if (name == "uncompromising") return AuditProperty::Uncompromising;
  if (name == "unanimity") return AuditProperty::Unanimity;
  if (name == "range") return AuditProperty::Range;
  throw input_error("unknown audit property: " + name);
}

AuditReport audit_sp(const MechanismFn& mechanism, const Instance& instance,
                     const AuditOptions& options) {
  return coalition_audit(mechanism, instance, options, AuditProperty::SP);
}

AuditReport audit_sp(const MechanismSpec& spec, const Instance& instance,
                     const AuditOptions& options) {
  check_space(spec, instance);
  return audit_sp(mechanism_fn(spec), instance, options);
}

AuditReport audit_gsp(const MechanismFn& mechanism, const Instance& instance,
                      const AuditOptions& options) {
  return coalition_audit(mechanism, instance, options, AuditProperty::GSP);
}

AuditReport audit_gsp(const MechanismSpec& spec, const Instance& instance,
                      const AuditOptions& options) {
  check_space(spec, instance);
  return audit_gsp(mechanism_fn(spec), instance, options);
}

AuditReport audit_sgsp(const MechanismFn& mechanism, const Instance& instance,
                       const AuditOptions& options) {
  return coalition_audit(mechanism, instance, options, AuditProperty::SGSP);
}

AuditReport audit_sgsp(const MechanismSpec& spec, const Instance& instance,
                       const AuditOptions& options) {
  check_space(spec, instance);
  return audit_sgsp(mechanism_fn(spec), instance, options);
}

std::vector<AuditReport> audit_structure(const MechanismSpec& spec, const Instance& instance,
                                         const AuditOptions& options) {
  check_space(spec, instance);
  const MechanismFn mechanism = mechanism_fn(spec);
  const Profile& profile = instance.profile;
  const Outcome truthful = mechanism(profile, instance.prediction);
  std::vector<AuditReport> reports;

  {
    AuditReport range;
    range.property = AuditProperty::Range;
    range.grid_spec = "support vs agent bounding box";
    const Box box = profile.bounding_box();
    for (const auto& [pt, w] : truthful.support()) {
      ++range.cells_searched;
      if (!box.contains(pt, options.tol)) {
        Deviation witness;
        witness.misreports = {pt};
        witness.deltas = {w};
        witness.note = "support point outside the agents' range";
        range.violations.push_back(std::move(witness));
      }
    }
    reports.push_back(std::move(range));
  }

  {
    AuditReport unanimity;
    unanimity.property = AuditProperty::Unanimity;
    unanimity.grid_spec = "coincident-profile check";
    if (profile.coincident()) {
      ++unanimity.cells_searched;
      if (!(truthful == Outcome::point(profile[0]))) {
        Deviation witness;
        witness.note = "coincident profile not mapped to the common point";
        for (const auto& [pt, w] : truthful.support()) {
          witness.misreports.push_back(pt);
          witness.deltas.push_back(w);
        }
        unanimity.violations.push_back(std::move(witness));
      }
    }
    reports.push_back(std::move(unanimity));
  }

  if (instance.metric.kind == SpaceKind::Line && is_deterministic(spec.id)) {
    AuditReport unc;
    unc.property = AuditProperty::Uncompromising;
    const SearchGrid grid = build_grid(instance, options);
    unc.grid_spec = grid.describe();
    const double y = truthful.single().x();
    Profile work = profile;
    for (int i = 0; i < profile.size(); ++i) {
      const double xi = profile[i].x();
      if (xi == y) continue;
      // Moves that keep the agent on its own side of the output must not
      // change the output.
      for (double m : grid.fine[0]) {
        const bool same_side = xi > y ? m >= y : m <= y;
        if (!same_side) continue;
        ++unc.cells_searched;
        work.set_point(i, Point::line(m));
        const Outcome moved = mechanism(work, instance.prediction);
        work.set_point(i, profile[i]);
        if (std::fabs(moved.single().x() - y) > options.tol) {
          Deviation witness;
          witness.coalition = {i};
          witness.misreports = {Point::line(m)};
          witness.deltas = {moved.single().x() - y};
          witness.note = "output moved under a same-side report";
          unc.violations.push_back(std::move(witness));
          if (unc.violations.size() >= options.max_witnesses) break;
        }
      }
    }
    reports.push_back(std::move(unc));
  }

  return reports;
}

std::vector<double> replay_deviation(const MechanismFn& mechanism, const Instance& instance,
                                     const Deviation& deviation) {
  if (deviation.coalition.empty())
    throw input_error("deviation replay needs a nonempty coalition");
  if (deviation.coalition.size() != deviation.misreports.size())
    throw input_error("deviation coalition and misreports disagree in size");
  const Profile& profile = instance.profile;
  const Outcome truthful = mechanism(profile, instance.prediction);
  Profile work = profile;
  for (std::size_t j = 0; j < deviation.coalition.size(); ++j)
    work.set_point(deviation.coalition[j], deviation.misreports[j]);
  const Outcome deviated = mechanism(work, instance.prediction);
  std::vector<double> deltas;
  deltas.reserve(deviation.coalition.size());
  for (const int agent : deviation.coalition)
    deltas.push_back(expected_agent_cost(instance.metric, profile[agent], truthful) -
                     expected_agent_cost(instance.metric, profile[agent], deviated));
  return deltas;
}

}  // namespace floc
