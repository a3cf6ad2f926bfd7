#include <cmath>

#include "doctest.h"
#include "rhol/error.hpp"
#include "rhol/ode.hpp"
#include "rhol/riccati_family.hpp"
#include "support.hpp"

using namespace rhol;
using testing_support::Rng;

namespace {

// Literal transcription of the degree-4 form with the bracket [lambda x - 1];
// kept as the discarded reading (it does not blow up to the Riccati family).
std::pair<cplx, cplx> literal_reading(cplx lambda, cplx x, cplx y) {
  const cplx L = (1.0 + lambda * lambda) * y * y * x * x - 2.0 * lambda * std::pow(y, 4);
  const cplx A = (y * y * (2.0 * lambda * x + 1.0) - 2.0 * std::pow(x, 3) + L) * y;
  const cplx B = std::pow(x, 4) - 2.0 * x * y * y * (lambda * x - 1.0) + std::pow(y, 4) - L * x;
  return {A, B};
}

// Hand expansion of the pulled-back form A y dt + (A t + B) dy under x = t y:
// y^4 [P(t, y) dt - (t^4 - 1) dy].
std::pair<cplx, cplx> pulled_back_fixture(cplx lambda, cplx t, cplx y) {
  const cplx P = 1.0 + 2.0 * t * (lambda - t * t) * y +
                 (t * t + t * t * lambda * lambda - 2.0 * lambda) * y * y;
  const cplx y4 = std::pow(y, 4);
  return {y4 * P, -y4 * (std::pow(t, 4) - 1.0)};
}

}  // namespace

TEST_CASE("explicit Riccati coefficients") {
  const RiccatiSystem s0 = explicit_riccati(0.0);
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const cplx t = rng.in_box(2);
    const cplx den = std::pow(t, 4) - 1.0;
    CHECK(std::abs(s0.alpha1()(t) - (-2.0 * std::pow(t, 3) / den)) < 1e-12 * (1 + std::abs(t / den)));
    CHECK(std::abs(s0.alpha2()(t) - t * t / den) < 1e-12 * (1 + std::abs(t / den)));
  }
  for (cplx lambda : {cplx(0), cplx(1), cplx(0.3, 0.1), cplx(0, -2)}) {
    const RiccatiSystem s = explicit_riccati(lambda);
    CHECK(std::abs(s.alpha0()(2.0) * 15.0 - 1.0) < 1e-14);
    REQUIRE(s.poles().size() == 4);
    for (cplx p : s.poles()) CHECK(std::abs(std::pow(p, 4) - 1.0) < 1e-12);
  }
}

TEST_CASE("Schwarzian of the explicit family") {
  Rng rng(22);
  for (cplx lambda : {cplx(0), cplx(1), cplx(0.3, 0.1), cplx(0, -2)}) {
    const RationalMap s = schwarzian_of_riccati(explicit_riccati(lambda));
    const RationalMap q = explicit_schwarzian(lambda);
    int n = 0;
    while (n < 100) {
      const cplx t = rng.in_box(2);
      if (std::abs(std::pow(t, 4) - 1.0) <= 0.1) continue;
      const cplx expected = 2.0 * (4.0 * t * t + lambda * (std::pow(t, 4) - 1.0)) /
                            std::pow(std::pow(t, 4) - 1.0, 2);
      CHECK(std::abs(s(t) - expected) <= 1e-9 * std::abs(expected));
      CHECK(std::abs(q(t) - expected) <= 1e-12 * std::abs(expected));
      ++n;
    }
  }
}

TEST_CASE("sampled Schwarzian residuals") {
  const auto a = schwarzian_residuals(cplx(0.3, 0.1), 100, 5);
  const auto b = schwarzian_residuals(cplx(0.3, 0.1), 100, 5);
  REQUIRE(a.size() == 100);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].t == b[k].t);
    CHECK(std::abs(std::pow(a[k].t, 4) - 1.0) > 0.1);
    CHECK(a[k].relative_residual <= 1e-9);
  }
  CHECK(schwarzian_residuals(0.0, 0).empty());
}

TEST_CASE("Schwarzian of companion systems") {
  const RationalMap q(Polynomial{1.0, cplx(0, 2)}, Polynomial{0.5, 0.0, 1.0});
  const RationalMap s =
      schwarzian_of_riccati(RiccatiSystem(RationalMap(1.0), RationalMap(), q * RationalMap(0.5)));
  for (cplx t : {cplx(0.1, 0.2), cplx(-1.3, 0.4), cplx(2.0, -1.0)}) {
    CHECK(std::abs(s(t) - q(t)) < 1e-12 * std::abs(q(t)));
  }
  const RationalMap zero =
      schwarzian_of_riccati(RiccatiSystem(RationalMap(1.0), RationalMap(), RationalMap()));
  CHECK(zero.is_zero());
  try {
    schwarzian_of_riccati(RiccatiSystem(RationalMap(), RationalMap(1.0), RationalMap()));
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::ZeroAlpha0);
  }
}

TEST_CASE("lambda symmetry under t -> i t") {
  Rng rng(23);
  const cplx i(0, 1);
  for (cplx lambda : {cplx(0.3, 0.1), cplx(1), cplx(0, -2)}) {
    const RationalMap qp = explicit_schwarzian(lambda), qm = explicit_schwarzian(-lambda);
    for (int k = 0; k < 50; ++k) {
      const cplx t = rng.in_box(2);
      if (std::abs(std::pow(t, 4) - 1.0) < 0.1) continue;
      CHECK(std::abs(qp(i * t) * (i * i) - qm(t)) <= 1e-10 * std::abs(qm(t)));
    }
  }
}

TEST_CASE("parabolic type check") {
  const QuadDifferential simple{RationalMap(Polynomial::constant(0.5), Polynomial{0, 0, 1.0}), {0.0}};
  const ParabolicReport r = parabolic_type_check(simple);
  CHECK(r.parabolic_type);
  CHECK(std::abs(r.punctures[0].leading - 0.5) < 1e-14);
  const QuadDifferential wrong{RationalMap(Polynomial::constant(1.0), Polynomial{0, 0, 1.0}), {0.0}};
  CHECK_FALSE(parabolic_type_check(wrong).parabolic_type);
  const QuadDifferential cubic{RationalMap(Polynomial::constant(1.0), Polynomial{0, 0, 0, 1.0}), {0.0}};
  try {
    parabolic_type_check(cubic);
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::PoleOrderTooHigh);
  }
  for (cplx lambda : {cplx(0), cplx(0.3, 0.1)}) {
    const RationalMap q = explicit_schwarzian(lambda);
    const std::vector<cplx> roots = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    const ParabolicReport rep = parabolic_type_check({q, roots});
    CHECK(rep.parabolic_type);
    for (const PunctureReport& pr : rep.punctures) {
      // Contour-integral oracle: (1/2 pi i) \oint (z-p) q dz.
      const int n = 4096;
      const double rad = 0.05;
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const cplx e = std::polar(1.0, 2 * std::numbers::pi * k / n);
        acc += rad * e * q(pr.puncture + rad * e) * rad * e / static_cast<double>(n);
      }
      CHECK(std::abs(pr.leading - acc) < 1e-10);
      CHECK(std::abs(pr.leading - 0.5) < 1e-8);
    }
  }
}

TEST_CASE("local model solutions") {
  CHECK(std::abs(local_model_solution(1, 1.0, 1.0)) < 1e-15);
  CHECK(std::abs(local_model_solution(0, 5.0, 2.0) - 3.0) < 1e-15);
  // Integrate dt/dx = -e^{n x} + n t from (0, c) to x along a straight path.
  const int n = 2;
  const cplx c(1, 1);
  const cplx x_end = 0.5;
  auto rhs = [&](double s, const CState<1>& t) {
    const cplx x = s * x_end;
    return CState<1>{(-std::exp(static_cast<double>(n) * x) + static_cast<double>(n) * t[0]) * x_end};
  };
  const auto res = dopri5<1>(rhs, 0.0, 1.0, CState<1>{c}, OdeOptions{});
  CHECK(std::abs(res.y[0] - local_model_solution(n, c, x_end)) < 1e-8);
  Rng rng(24);
  for (int k = 0; k < 50; ++k) {
    const int m = k % 4;
    const cplx cc = rng.in_box(2), x = rng.in_box(1);
    const double h = 1e-5;
    const cplx deriv = (local_model_solution(m, cc, x + h) - local_model_solution(m, cc, x - h)) / (2 * h);
    CHECK(std::abs(deriv - (-std::exp(static_cast<double>(m) * x) +
                            static_cast<double>(m) * local_model_solution(m, cc, x))) < 1e-6);
  }
}

TEST_CASE("compactification arithmetic") {
  const CuspData four{{1.0, cplx(0, 1), -1.0, cplx(0, -1)}, {0, 0, 0, 0}};
  CHECK(tangency_count(four) == 0);
  CHECK(diagonal_self_intersection(four).value == -2);
  CHECK(diagonal_self_intersection(four).note == "Hirzebruch surface F_2");
  const CuspData three{{0.0, 1.0, 2.0}, {0, 1, 1}};
  CHECK(tangency_count(three) == 2);
  CHECK(diagonal_self_intersection(three).value == 1);
  CHECK(tangency_count({{0.0}, {3}}) == 3);
  CHECK(diagonal_self_intersection({{1.0, cplx(0, 1), -1.0, cplx(0, -1)}, {1, 1, 1, 1}}).value == 2);
  Rng rng(25);
  for (int k = 0; k < 50; ++k) {
    CuspData cd;
    const int m = 1 + static_cast<int>(rng.uniform(0, 7));
    for (int j = 0; j < m; ++j) {
      cd.punctures.push_back(rng.in_box(1));
      cd.n.push_back(static_cast<int>(rng.uniform(0, 4)));
    }
    CHECK(diagonal_self_intersection(cd).value == 2 - m + tangency_count(cd));
  }
}

TEST_CASE("degree-4 form and its blow-up") {
  CHECK(original_form_residual(0.0, 0.0, 0.0) == std::pair<cplx, cplx>{0.0, 0.0});
  const auto [a, b] = original_form_residual(0.0, 1.0, 1.0);
  CHECK(std::abs(a) < 1e-15);
  CHECK(std::abs(b) < 1e-15);
  // The literal transcription gives (0, 3) here and fails the blow-up check.
  const auto [la, lb] = literal_reading(0.0, 1.0, 1.0);
  CHECK(std::abs(la) < 1e-15);
  CHECK(std::abs(lb - 3.0) < 1e-15);
  Rng rng(26);
  for (cplx lambda : {cplx(0), cplx(0.3, 0.1)}) {
    CHECK(blowup_consistency(lambda, 100) <= 1e-9);
    for (int k = 0; k < 20; ++k) {
      const cplx t = rng.in_box(2), y = rng.in_box(2);
      const auto [A, B] = original_form_residual(lambda, t * y, y);
      const auto [fdt, fdy] = pulled_back_fixture(lambda, t, y);
      CHECK(std::abs(A * y - fdt) <= 1e-12 * (1 + std::abs(fdt)));
      CHECK(std::abs(A * t + B - fdy) <= 1e-12 * (1 + std::abs(fdy)));
      const auto [LA, LB] = literal_reading(lambda, t * y, y);
      const auto [ldt, ldy] = pulled_back_fixture(lambda, t, y);
      CHECK(std::abs(LA * t + LB - ldy) > 1e-6 * std::abs(ldy));
    }
  }
  // Both coefficients have total degree 5: A(sx, sy) / s^5 settles as s grows.
  const cplx x(0.3, 0.7), y(-0.4, 0.2);
  for (cplx lambda : {cplx(0), cplx(0.3, 0.1)}) {
    const auto [A1, B1] = original_form_residual(lambda, 1e4 * x, 1e4 * y);
    const auto [A2, B2] = original_form_residual(lambda, 2e4 * x, 2e4 * y);
    CHECK(std::abs(A2 / std::pow(2e4, 5) - A1 / std::pow(1e4, 5)) < 1e-3 * std::abs(A1 / std::pow(1e4, 5)));
    CHECK(std::abs(B2 / std::pow(2e4, 5) - B1 / std::pow(1e4, 5)) < 1e-3 * std::abs(B1 / std::pow(1e4, 5)));
  }
}
