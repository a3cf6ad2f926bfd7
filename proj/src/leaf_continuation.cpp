#include <array>
#include <cmath>

#include "rhol/continuation.hpp"
#include "rhol/error.hpp"

namespace rhol {

namespace {

// Value of the leaf y = H(y0) and its t-derivative from the Riccati equation.
std::pair<cplx, cplx> leaf_jet(const RiccatiSystem& sys, const Frame& f, cplx y0) {
  const SpherePoint y = f.H.apply(SpherePoint(y0));
  if (y.is_infinity()) throw NumericError(ErrorKind::NewtonDiverged, "leaf passes through infinity");
  const auto [a0, a1, a2] = sys.eval(f.endpoint);
  const cplx Y = y.value();
  return {Y, a2 * Y * Y + a1 * Y + a0};
}

}  // namespace

CurveHit holonomy_to_curve(const RiccatiSystem& sys, cplx t0, cplx y0, const BasePath& base_path,
                           const RationalMap& curve, double newton_tol, const TransportOptions& opt) {
  if (base_path.vertices.empty() || std::abs(base_path.start() - t0) > 1e-12) {
    throw NumericError(ErrorKind::InvalidArgument, "base path must start at t0");
  }
  Frame f{Moebius::identity(), t0, 0.0};
  if (base_path.vertices.size() >= 2) f = transport(sys, base_path, f, opt);
  const RationalMap dcurve = curve.derivative();
  CurveHit hit;
  for (int it = 0;; ++it) {
    const cplx t = f.endpoint;
    const auto [Y, dY] = leaf_jet(sys, f, y0);
    const cplx g = Y - curve(t);
    const cplx dg = dY - dcurve(t);
    hit.t = t;
    hit.y = Y;
    hit.iterations = it;
    hit.residual = std::abs(g);
    hit.slope = std::abs(dg);
    if (hit.residual <= newton_tol) {
      if (hit.slope < 1e-10) throw NumericError(ErrorKind::TangencyNearby, "leaf is tangent to the curve");
      return hit;
    }
    if (it >= 25) throw NumericError(ErrorKind::NewtonDiverged, "no convergence in 25 iterations");
    if (hit.slope == 0.0) throw NumericError(ErrorKind::TangencyNearby, "g' vanishes at a Newton iterate");
    const cplx step = -g / dg;
    if (std::abs(step) > 0.5) throw NumericError(ErrorKind::NewtonDiverged, "Newton step longer than 0.5");
    f = transport(sys, segment(t, t + step), f, opt);
  }
}

namespace {

// Five-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 5> kGaussNodes = {0.046910077030668, 0.230765344947158, 0.5, 0.769234655052842,
                                               0.953089922969332};
constexpr std::array<double, 5> kGaussWeights = {0.118463442528095, 0.239314335249683, 0.284444444444444,
                                                 0.239314335249683, 0.118463442528095};

cplx chord_integral(const RationalMap& f, cplx a, cplx b) {
  cplx sum = 0.0;
  for (std::size_t k = 0; k < 5; ++k) sum += kGaussWeights[k] * f(a + kGaussNodes[k] * (b - a));
  return sum * (b - a);
}

}  // namespace

PainleveResult painleve_continue(const RationalMap& R, const RationalMap& S, cplx x0, cplx y0,
                                 const BasePath& x_path, const TransportOptions& opt) {
  if (x_path.vertices.empty() || std::abs(x_path.start() - x0) > 1e-12) {
    throw NumericError(ErrorKind::InvalidArgument, "x path must start at x0");
  }
  check_path_margin(RiccatiSystem(R, RationalMap(), RationalMap()), x_path, opt.pole_margin);
  if (S.pole_order_at(y0) > 0 || std::abs(S(y0)) < 1e-14) {
    throw NumericError(ErrorKind::InvalidArgument, "S(y0) must be finite and nonzero");
  }

  PainleveResult res;
  res.exact_primitives = R.is_polynomial() && S.is_polynomial();
  res.path_length = x_path.length();
  ContinuationOutcome& out = res.outcome;
  out.final.x = x0;
  out.final.z = SpherePoint(y0);
  out.track.push_back({x0, false, std::nullopt});

  // Running value of int R dx - int S dy when no exact primitives exist.
  cplx balance = 0.0;
  auto drift = [&](cplx x, cplx y) {
    if (!res.exact_primitives) return std::abs(balance);
    const Polynomial F = R.numerator().antiderivative() * (1.0 / R.denominator_leading());
    const Polynomial G = S.numerator().antiderivative() * (1.0 / S.denominator_leading());
    return std::abs((F(x) - F(x0)) - (G(y) - G(y0)));
  };

  const std::vector<cplx> pts = x_path.refined();
  const double total = res.path_length;
  double offset = 0.0;
  cplx y = y0;
  OdeOptions ode = opt.ode();
  for (std::size_t seg = 1; seg < pts.size(); ++seg) {
    const cplx xa = pts[seg - 1];
    const double len = std::abs(pts[seg] - xa);
    if (len == 0.0) continue;
    const cplx dir = (pts[seg] - xa) / len;
    bool collapsed = false;
    cplx prev_x = xa, prev_y = y;
    auto rhs = [&](double s, const CState<1>& st) {
      const cplx sv = S(st[0]);
      if (sv == cplx(0.0)) return CState<1>{cplx(1e300)};
      return CState<1>{R(xa + s * dir) * dir / sv};
    };
    auto post = [&](double s, CState<1>& st, double) {
      const cplx x = xa + s * dir;
      if (!res.exact_primitives) balance += chord_integral(R, prev_x, x) - chord_integral(S, prev_y, st[0]);
      prev_x = x;
      prev_y = st[0];
      out.track.push_back({x, false, std::nullopt});
      ++out.steps;
      if (std::abs(S(st[0])) < 1e-10) {
        collapsed = true;
        return false;
      }
      return true;
    };
    const OdeResult<1> r = dopri5<1>(rhs, 0.0, len, CState<1>{y}, ode, post);
    y = r.y[0];
    const cplx x = xa + r.t * dir;
    if (collapsed || r.status == OdeStatus::step_collapse || r.status == OdeStatus::budget_exceeded) {
      out.status = r.status == OdeStatus::budget_exceeded ? ContinuationStatus::budget_exceeded
                                                           : ContinuationStatus::singular;
      if (out.status == ContinuationStatus::singular) out.singular_kind = SingularKind::step_collapse;
      out.parameter_reached = total == 0.0 ? 0.0 : (offset + r.t) / total;
      out.final.x = x;
      out.final.z = SpherePoint(y);
      out.singular_point = SpherePoint(x);
      res.y = y;
      res.conserved_drift = drift(x, y);
      return res;
    }
    offset += len;
  }
  out.parameter_reached = 1.0;
  out.final.x = x_path.end();
  out.final.z = SpherePoint(y);
  res.y = y;
  res.conserved_drift = drift(x_path.end(), y);
  return res;
}

}  // namespace rhol
