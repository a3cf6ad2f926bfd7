#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rhol/rational.hpp"
#include "rhol/transport.hpp"

namespace rhol {

/// dy/dt = [1 + 2t(lambda - t^2) y + (t^2 + t^2 lambda^2 - 2 lambda) y^2] / (t^4 - 1)
RiccatiSystem explicit_riccati(cplx lambda);

/// 2 (4t^2 + lambda (t^4 - 1)) / (t^4 - 1)^2
RationalMap explicit_schwarzian(cplx lambda);

struct SchwarzianSample {
  cplx t;
  double relative_residual = 0.0;
};

/// |schwarzian_of_riccati - explicit_schwarzian| / |explicit_schwarzian| for
/// the explicit family at pseudo-random t in [-2, 2]^2 with |t^4 - 1| > 0.1.
std::vector<SchwarzianSample> schwarzian_residuals(cplx lambda, int samples, unsigned seed = 1);

/// Schwarzian derivative of the developing map -b/a of the linear lift:
/// 2 a0 a2 - a1^2/2 + a1 a0'/a0 - a1' - 3/2 (a0'/a0)^2 + a0''/a0.
RationalMap schwarzian_of_riccati(const RiccatiSystem& sys);

struct QuadDifferential {
  RationalMap q;
  std::vector<cplx> punctures;
};

struct PunctureReport {
  cplx puncture;
  int pole_order = 0;
  /// Coefficient of (z - p)^-2.
  cplx leading = 0.0;
  bool parabolic = false;
};

struct ParabolicReport {
  std::vector<PunctureReport> punctures;
  bool parabolic_type = false;
};

/// Throws PoleOrderTooHigh when q has a pole of order > 2 at a puncture.
ParabolicReport parabolic_type_check(const QuadDifferential& qd, double tol = 1e-8);

/// t(x) = (c - x) e^{n x}, the solution of dt/dx = -e^{n x} + n t.
cplx local_model_solution(int n, cplx c, cplx x);

struct CuspData {
  std::vector<cplx> punctures;
  std::vector<int> n;
};

int tangency_count(const CuspData& cd);

struct SelfIntersection {
  int value = 0;
  /// Informational reading of the compactified surface.
  std::string note;
};

/// 2 + sum (n_p - 1)
SelfIntersection diagonal_self_intersection(const CuspData& cd);

/// Coefficients (A, B) of the degree-4 form A dx + B dy whose blow-up x = t y
/// gives the explicit Riccati family.
std::pair<cplx, cplx> original_form_residual(cplx lambda, cplx x, cplx y);

/// Max deviation from proportionality between the pulled-back form and the
/// explicit Riccati form at pseudo-random (t, y) with y != 0.
double blowup_consistency(cplx lambda, int sample_count, unsigned seed = 7);

}  // namespace rhol
