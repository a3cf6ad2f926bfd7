#include "rhol/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhol/error.hpp"

namespace rhol {

namespace {

using State = CState<5>;  // chart coordinate, then a, b, c, d

struct ChartKey {
  bool reciprocal = false;
  std::optional<cplx> cusp;

  bool operator==(const ChartKey& o) const { return reciprocal == o.reciprocal && cusp == o.cusp; }
};

struct BaseChart {
  RationalMap q;
  std::vector<cplx> double_poles;
  /// Punctures without a cusp chart (declared punctures that are not double
  /// poles, and poles of other orders).
  std::vector<cplx> other_punctures;
};

bool contains(const std::vector<cplx>& v, cplx p) {
  return std::any_of(v.begin(), v.end(), [&](cplx w) { return std::abs(w - p) <= 1e-8; });
}

BaseChart make_base(const RationalMap& q, const std::vector<cplx>& punctures) {
  BaseChart c{q, {}, {}};
  for (const Pole& p : q.poles()) {
    (p.order == 2 ? c.double_poles : c.other_punctures).push_back(p.location);
  }
  for (cplx p : punctures) {
    if (!contains(c.double_poles, p) && !contains(c.other_punctures, p)) c.other_punctures.push_back(p);
  }
  return c;
}

class Atlas {
 public:
  explicit Atlas(const ProjectiveStructure& ps) {
    std::vector<cplx> recip;
    for (cplx p : ps.qd.punctures) {
      if (p != cplx(0.0)) recip.push_back(1.0 / p);
    }
    t_ = make_base(ps.qd.q, ps.qd.punctures);
    // q dt^2 written in s = 1/t: q(1/s) / s^4.
    s_ = make_base(ps.qd.q.compose_reciprocal() * RationalMap(Polynomial::constant(1.0), 1.0, {Pole{0.0, 4}}), recip);
  }

  const BaseChart& base(bool reciprocal) const { return reciprocal ? s_ : t_; }

  // Half of the quadratic differential in the chart's coordinate. In the cusp
  // chart x = p + e^zeta it is (e^{2 zeta} q(p + e^zeta) - 1/2) / 2, with the
  // (x - p)^2 factor cancelled exactly.
  cplx half_q(const ChartKey& k, cplx x) const {
    const RationalMap& q = base(k.reciprocal).q;
    if (!k.cusp) return 0.5 * q(x);
    const cplx p = *k.cusp;
    const cplx t = p + std::exp(x);
    cplx den = q.denominator_leading();
    for (const Pole& pole : q.poles()) {
      if (pole.location == p) continue;
      den *= std::pow(t - pole.location, pole.order);
    }
    return 0.5 * (q.numerator()(t) / den - 0.5);
  }

  // Base point on the sphere.
  static SpherePoint sphere(const ChartKey& k, cplx x) {
    const cplx w = k.cusp ? *k.cusp + std::exp(x) : x;
    if (!k.reciprocal) return SpherePoint(w);
    if (w == cplx(0.0)) return SpherePoint::infinity();
    return SpherePoint(1.0 / w);
  }

 private:
  BaseChart t_, s_;
};

// Frame in a new coordinate u carrying the same 2-jet of phi, given the old
// coordinate's first two derivatives with respect to u. Companion frames
// satisfy phi = -b/a, phi' = -1/a^2 and phi''/phi' = -2c/a.
Mat2 change_coordinate(const Mat2& h, cplx xu, cplx xuu) {
  const cplx a = h[0], b = h[1], c = h[2];
  const cplx phi = -b / a;
  const cplx d1 = -1.0 / (a * a);
  const cplx d2 = 2.0 * c / (a * a * a);
  const cplx e1 = d1 * xu;
  const cplx e2 = d2 * xu * xu + d1 * xuu;
  const cplx an = std::sqrt(-1.0 / e1);
  const cplx bn = -phi * an;
  const cplx cn = -an * e2 / (2.0 * e1);
  const cplx dn = (1.0 + bn * cn) / an;
  return {an, bn, cn, dn};
}

// Moves (x, h) from chart `from` to chart `to`; supported moves are t <-> 1/t
// between base charts and base <-> cusp over the same base.
std::pair<cplx, Mat2> transition(const ChartKey& from, cplx x, const Mat2& h, const ChartKey& to) {
  if (!from.cusp && !to.cusp) {
    return {1.0 / x, change_coordinate(h, -x * x, 2.0 * x * x * x)};
  }
  if (!from.cusp) {
    const cplx w = x - *to.cusp;
    return {std::log(w), change_coordinate(h, w, w)};
  }
  const cplx w = std::exp(x);
  return {*from.cusp + w, change_coordinate(h, 1.0 / w, -1.0 / (w * w))};
}

Mat2 frame_of(const State& y) { return {y[1], y[2], y[3], y[4]}; }

SpherePoint fiber_value(const Mat2& h) {
  if (std::abs(h[0]) < 1e-300) return SpherePoint::infinity();
  return SpherePoint(-h[1] / h[0]);
}

void renormalize(cplx* m, double* acc) {
  const cplx det = m[0] * m[3] - m[1] * m[2];
  *acc += std::abs(det - 1.0);
  const cplx root = std::sqrt(det);
  for (int k = 0; k < 4; ++k) m[k] /= root;
}

}  // namespace

SpherePoint GermState::t() const { return Atlas::sphere(ChartKey{reciprocal_chart, cusp}, x); }

std::string_view to_string(ContinuationStatus s) {
  switch (s) {
    case ContinuationStatus::completed: return "completed";
    case ContinuationStatus::singular: return "singular";
    case ContinuationStatus::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

std::string_view to_string(SingularKind k) {
  switch (k) {
    case SingularKind::none: return "none";
    case SingularKind::puncture_approach: return "puncture_approach";
    case SingularKind::escape_to_infinity: return "escape_to_infinity";
    case SingularKind::step_collapse: return "step_collapse";
  }
  return "unknown";
}

GermState basepoint_germ(const ProjectiveStructure& ps) {
  GermState g;
  g.x = ps.basepoint;
  g.frame = ps.base_frame;
  g.z = fiber_value(to_mat(ps.base_frame.H));
  return g;
}

ContinuationOutcome continue_inverse_developing(const ProjectiveStructure& ps, const GermState& start,
                                                const BasePath& fiber_path, std::optional<double> budget,
                                                const ContinuationOptions& opt) {
  if (fiber_path.vertices.empty()) throw NumericError(ErrorKind::InvalidArgument, "empty fiber path");
  const SpherePoint zf = fiber_value(to_mat(start.frame.H));
  const double scale = start.z.is_finite() ? std::max(1.0, std::abs(start.z.value())) : 1.0;
  if (start.z.is_infinity() || zf.is_infinity() || std::abs(zf.value() - start.z.value()) > 1e-7 * scale ||
      std::abs(start.z.value() - fiber_path.start()) > 1e-7 * scale) {
    throw NumericError(ErrorKind::InconsistentStart, "start germ does not match the frame or the fiber path");
  }
  const Atlas atlas(ps);
  ChartKey chart{start.reciprocal_chart, start.cusp};

  ContinuationOutcome out;
  out.final = start;
  out.track.push_back({start.x, chart.reciprocal, chart.cusp});
  const double total = fiber_path.length();
  if (total == 0.0) {
    out.parameter_reached = 1.0;
    return out;
  }
  const double cap = budget.value_or(opt.budget_factor * total);
  const std::vector<cplx> pts = fiber_path.refined();
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) cumulative.push_back(cumulative.back() + std::abs(pts[i] - pts[i - 1]));

  const Mat2 h0 = to_mat(start.frame.H);
  State y{start.x, h0[0], h0[1], h0[2], h0[3]};
  double arclength = start.arclength;
  double acc_err = start.frame.accumulated_error;
  OdeOptions ode = opt.transport.ode();
  ode.initial_step = opt.initial_step;
  ode.max_step = opt.max_step;
  ode.max_steps = opt.max_steps;
  const double exit_level = std::log(opt.cusp_exit);

  auto finish = [&](const State& s, double param) {
    out.parameter_reached = std::clamp(param, 0.0, 1.0);
    out.final.x = s[0];
    out.final.reciprocal_chart = chart.reciprocal;
    out.final.cusp = chart.cusp;
    out.final.frame = Frame{Moebius(s[1], s[2], s[3], s[4]), s[0], acc_err};
    out.final.z = fiber_value(frame_of(s));
    out.final.arclength = arclength;
  };
  auto fiber_point = [&](double sigma) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), sigma);
    const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative.begin(), 1), pts.size() - 1);
    const double len = cumulative[i] - cumulative[i - 1];
    const double f = len == 0.0 ? 0.0 : (sigma - cumulative[i - 1]) / len;
    return pts[i - 1] + f * (pts[i] - pts[i - 1]);
  };
  auto switch_to = [&](State& s, const ChartKey& to) {
    const auto [x, h] = transition(chart, s[0], frame_of(s), to);
    s = State{x, h[0], h[1], h[2], h[3]};
    chart = to;
    out.track.push_back({s[0], chart.reciprocal, chart.cusp});
  };

  for (std::size_t seg = 1; seg < pts.size(); ++seg) {
    const cplx za = pts[seg - 1];
    const double len = std::abs(pts[seg] - za);
    if (len == 0.0) continue;
    const cplx dir = (pts[seg] - za) / len;
    const double offset = cumulative[seg - 1];
    SingularKind stop_kind = SingularKind::none;
    bool step_budget = false;
    double stop_param = 0.0;

    // d/ds of (x, H) when phi(x(s)) follows the fiber path: x' = dir / phi'.
    auto rhs = [&](double, const State& s) {
      const cplx a = s[1], b = s[2];
      const cplx v = -dir * a * a;
      const cplx hq = atlas.half_q(chart, s[0]);
      return State{v, s[3] * v, s[4] * v, -hq * a * v, -hq * b * v};
    };
    auto post = [&](double sigma, State& s, double) {
      renormalize(&s[1], &acc_err);
      ++out.steps;
      const TrackPoint prev = out.track.back();
      arclength += spherical_distance(Atlas::sphere(ChartKey{prev.reciprocal_chart, prev.cusp}, prev.x),
                                      Atlas::sphere(chart, s[0]));
      out.track.push_back({s[0], chart.reciprocal, chart.cusp});
      const double param = (offset + sigma) / total;
      auto stop = [&](SingularKind k) {
        stop_kind = k;
        stop_param = param;
        return false;
      };
      if (out.steps >= opt.max_steps) {
        step_budget = true;
        stop_param = param;
        return false;
      }
      if (1.0 / std::norm(s[1]) < opt.derivative_floor) return stop(SingularKind::step_collapse);
      if (arclength > cap) return stop(SingularKind::escape_to_infinity);
      if (chart.cusp) {
        if (s[0].real() < -opt.cusp_depth) {
          out.puncture = chart.reciprocal ? 1.0 / *chart.cusp : *chart.cusp;
          return stop(SingularKind::puncture_approach);
        }
        if (s[0].real() > exit_level) switch_to(s, ChartKey{chart.reciprocal, std::nullopt});
        return true;
      }
      const BaseChart& base = atlas.base(chart.reciprocal);
      for (cplx p : base.other_punctures) {
        if (std::abs(s[0] - p) < opt.transport.pole_margin) {
          out.puncture = chart.reciprocal ? 1.0 / p : p;
          return stop(SingularKind::puncture_approach);
        }
      }
      for (cplx p : base.double_poles) {
        if (std::abs(s[0] - p) < opt.cusp_enter) {
          switch_to(s, ChartKey{chart.reciprocal, p});
          return true;
        }
      }
      if (std::abs(s[0]) > opt.chart_switch) switch_to(s, ChartKey{!chart.reciprocal, std::nullopt});
      return true;
    };

    OdeResult<5> res;
    try {
      res = dopri5<5>(rhs, 0.0, len, y, ode, post);
    } catch (const NumericError& e) {
      if (e.kind() != ErrorKind::PoleEvaluation) throw;
      // A stage landed exactly on a pole of q.
      finish(y, offset / total);
      out.status = ContinuationStatus::singular;
      out.singular_kind = SingularKind::step_collapse;
      out.singular_point = SpherePoint(fiber_point(offset));
      return out;
    }
    y = res.y;
    if (step_budget || res.status == OdeStatus::budget_exceeded) {
      finish(y, step_budget ? stop_param : (offset + res.t) / total);
      out.status = ContinuationStatus::budget_exceeded;
      return out;
    }
    if (res.status == OdeStatus::step_collapse) {
      stop_kind = SingularKind::step_collapse;
      stop_param = (offset + res.t) / total;
    }
    if (stop_kind != SingularKind::none) {
      finish(y, stop_param);
      out.status = ContinuationStatus::singular;
      out.singular_kind = stop_kind;
      out.singular_point = SpherePoint(fiber_point(out.parameter_reached * total));
      return out;
    }
  }
  finish(y, 1.0);
  return out;
}

SpherePoint redevelop(const ProjectiveStructure& ps, const GermState& start, const std::vector<TrackPoint>& track) {
  const Atlas atlas(ps);
  Mat2 h = to_mat(start.frame.H);
  double acc = 0.0;
  const OdeOptions ode = ps.opt.ode();
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    const ChartKey from{track[i].reciprocal_chart, track[i].cusp};
    const ChartKey to{track[i + 1].reciprocal_chart, track[i + 1].cusp};
    if (!(from == to)) {
      h = transition(from, track[i].x, h, to).second;
      continue;
    }
    const cplx a = track[i].x;
    const double len = std::abs(track[i + 1].x - a);
    if (len == 0.0) continue;
    const cplx dir = (track[i + 1].x - a) / len;
    auto rhs = [&](double u, const Mat2& m) {
      const cplx hq = atlas.half_q(from, a + u * dir);
      return Mat2{dir * m[2], dir * m[3], -hq * dir * m[0], -hq * dir * m[1]};
    };
    auto post = [&](double, Mat2& m, double) {
      renormalize(m.data(), &acc);
      return true;
    };
    const OdeResult<4> res = dopri5<4>(rhs, 0.0, len, h, ode, post);
    if (res.status != OdeStatus::completed) {
      throw NumericError(ErrorKind::StepCollapse, "re-development along the track failed");
    }
    h = res.y;
  }
  return fiber_value(h);
}

std::vector<ProbeResult> natural_boundary_probe(const ProjectiveStructure& ps, int directions,
                                                const std::vector<double>& radius_schedule,
                                                const ContinuationOptions& opt) {
  std::vector<ProbeResult> out;
  if (directions <= 0) return out;
  std::vector<double> radii = radius_schedule;
  std::sort(radii.begin(), radii.end());
  const GermState start = basepoint_germ(ps);
  const cplx center = start.z.value();
  for (int k = 0; k < directions; ++k) {
    ProbeResult r;
    r.angle = 2.0 * std::numbers::pi * k / directions;
    const cplx dir = std::polar(1.0, r.angle);
    for (double radius : radii) {
      const ContinuationOutcome o =
          continue_inverse_developing(ps, start, segment(center, center + radius * dir), std::nullopt, opt);
      r.radius = radius;
      r.parameter = o.parameter_reached;
      r.endpoint = SpherePoint(center + o.parameter_reached * radius * dir);
      r.kind = o.singular_kind;
      r.singular = o.status == ContinuationStatus::singular;
      if (o.status != ContinuationStatus::completed) break;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace rhol
