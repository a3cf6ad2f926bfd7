#include "rhol/riccati_family.hpp"

#include <cmath>
#include <random>

#include "rhol/error.hpp"

namespace rhol {

namespace {

// (t^4 - 1)^order with its roots given exactly.
std::vector<Pole> fourth_roots(int order) {
  return {{1.0, order}, {cplx(0.0, 1.0), order}, {-1.0, order}, {cplx(0.0, -1.0), order}};
}

}  // namespace

RiccatiSystem explicit_riccati(cplx lambda) {
  const RationalMap a0(Polynomial::constant(1.0), 1.0, fourth_roots(1));
  const RationalMap a1(Polynomial{0.0, 2.0 * lambda, 0.0, -2.0}, 1.0, fourth_roots(1));
  const RationalMap a2(Polynomial{-2.0 * lambda, 0.0, 1.0 + lambda * lambda}, 1.0, fourth_roots(1));
  return RiccatiSystem(a0, a1, a2);
}

RationalMap explicit_schwarzian(cplx lambda) {
  const Polynomial num = Polynomial{-2.0 * lambda, 0.0, 8.0, 0.0, 2.0 * lambda};
  return RationalMap(num, 1.0, fourth_roots(2));
}

RationalMap schwarzian_of_riccati(const RiccatiSystem& sys) {
  const RationalMap& a0 = sys.alpha0();
  const RationalMap& a1 = sys.alpha1();
  const RationalMap& a2 = sys.alpha2();
  if (a0.is_zero()) throw NumericError(ErrorKind::ZeroAlpha0, "alpha0 vanishes identically");
  const RationalMap d0 = a0.derivative();
  const RationalMap l0 = d0 / a0;
  const RationalMap dd0 = d0.derivative() / a0;
  return RationalMap(2.0) * a0 * a2 - RationalMap(0.5) * a1 * a1 + a1 * l0 - a1.derivative() -
         RationalMap(1.5) * l0 * l0 + dd0;
}

ParabolicReport parabolic_type_check(const QuadDifferential& qd, double tol) {
  ParabolicReport rep;
  rep.parabolic_type = true;
  for (cplx p : qd.punctures) {
    PunctureReport pr;
    pr.puncture = p;
    pr.pole_order = qd.q.pole_order_at(p);
    if (pr.pole_order > 2) {
      throw NumericError(ErrorKind::PoleOrderTooHigh, "quadratic differential has a pole of order > 2");
    }
    pr.leading = pr.pole_order == 2 ? qd.q.laurent_coefficient(p, 2) : cplx(0.0);
    pr.parabolic = std::abs(pr.leading - 0.5) <= tol;
    rep.parabolic_type = rep.parabolic_type && pr.parabolic;
    rep.punctures.push_back(pr);
  }
  return rep;
}

cplx local_model_solution(int n, cplx c, cplx x) {
  return (c - x) * std::exp(static_cast<double>(n) * x);
}

int tangency_count(const CuspData& cd) {
  if (cd.n.size() != cd.punctures.size() && !cd.punctures.empty()) {
    throw NumericError(ErrorKind::InvalidArgument, "one n_p per puncture is required");
  }
  int total = 0;
  for (int v : cd.n) {
    if (v < 0) throw NumericError(ErrorKind::InvalidArgument, "n_p must be nonnegative");
    total += v;
  }
  return total;
}

SelfIntersection diagonal_self_intersection(const CuspData& cd) {
  SelfIntersection out;
  out.value = 2 + tangency_count(cd) - static_cast<int>(cd.n.size());
  if (out.value <= 0) {
    out.note = "Hirzebruch surface F_" + std::to_string(-out.value);
  } else {
    out.note = "positive self-intersection " + std::to_string(out.value);
  }
  return out;
}

std::pair<cplx, cplx> original_form_residual(cplx lambda, cplx x, cplx y) {
  const cplx y2 = y * y, x2 = x * x;
  const cplx L = (1.0 + lambda * lambda) * y2 * x2 - 2.0 * lambda * y2 * y2;
  const cplx A = (y2 * (2.0 * lambda * x + 1.0) - 2.0 * x2 * x + L) * y;
  const cplx B = x2 * x2 - x * y2 * (2.0 * lambda * x + 1.0) + y2 * y2 - L * x;
  return {A, B};
}

double blowup_consistency(cplx lambda, int sample_count, unsigned seed) {
  if (sample_count < 1) throw NumericError(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  int done = 0;
  while (done < sample_count) {
    const cplx t(u(gen), u(gen)), y(u(gen), u(gen));
    if (std::abs(y) < 1e-3) continue;
    const auto [A, B] = original_form_residual(lambda, t * y, y);
    // x = t y, dx = t dy + y dt
    const cplx dt_coeff = A * y;
    const cplx dy_coeff = A * t + B;
    const cplx P = 1.0 + 2.0 * t * (lambda - t * t) * y + (t * t + t * t * lambda * lambda - 2.0 * lambda) * y * y;
    const cplx Q = -(t * t * t * t - 1.0);
    // Riccati form: P dt + Q dy.
    const double scale = std::abs(dt_coeff) * std::abs(Q) + std::abs(dy_coeff) * std::abs(P);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(dt_coeff * Q - dy_coeff * P) / scale);
    ++done;
  }
  return worst;
}

std::vector<SchwarzianSample> schwarzian_residuals(cplx lambda, int samples, unsigned seed) {
  if (samples < 0) throw NumericError(ErrorKind::InvalidArgument, "samples must be >= 0");
  const RationalMap derived = schwarzian_of_riccati(explicit_riccati(lambda));
  const RationalMap closed = explicit_schwarzian(lambda);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<SchwarzianSample> out;
  while (static_cast<int>(out.size()) < samples) {
    const cplx t(u(gen), u(gen));
    if (std::abs(t * t * t * t - 1.0) <= 0.1) continue;
    const cplx ref = closed(t);
    const double scale = std::abs(ref);
    out.push_back({t, scale == 0.0 ? std::abs(derived(t)) : std::abs(derived(t) - ref) / scale});
  }
  return out;
}

}  // namespace rhol
