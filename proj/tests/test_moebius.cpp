#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rhol/error.hpp"
#include "rhol/moebius.hpp"
#include "support.hpp"

using namespace rhol;
using testing_support::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(auto f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("apply handles the point at infinity") {
  CHECK(apply(Moebius::identity(), cplx(3, 4)).value() == cplx(3, 4));
  CHECK(apply(Moebius(0, 1, -1, 0), SpherePoint(0.0)).is_infinity());
  CHECK(std::abs(apply(Moebius::homothety(2.0), SpherePoint(1.0)).value() - 2.0) < 1e-15);
  const Moebius m(1, 2, 3, 7);
  CHECK(std::abs(apply(m, SpherePoint::infinity()).value() - 1.0 / 3.0) < 1e-15);
  CHECK(apply(Moebius::translation(1.0), SpherePoint::infinity()).is_infinity());
}

TEST_CASE("constructors normalize the determinant") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Moebius m = rng.moebius();
    CHECK(std::abs(m.det() - 1.0) <= 1e-12);
    const Moebius p = m * rng.moebius() * rng.moebius();
    CHECK(std::abs(p.det() - 1.0) <= 1e-12);
    CHECK((m * m.inverse()).equal_up_to_sign(Moebius::identity(), 1e-10));
  }
  CHECK_THROWS_AS(Moebius(1, 2, 2, 4), NumericError);
}

TEST_CASE("group laws hold at random triples") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Moebius f = rng.moebius(), g = rng.moebius(), h = rng.moebius();
    CHECK(((f * g) * h).distance_up_to_sign(f * (g * h)) <= 1e-9);
    CHECK((f * g).inverse().distance_up_to_sign(g.inverse() * f.inverse()) <= 1e-9);
  }
}

TEST_CASE("spherical distance") {
  CHECK(spherical_distance(cplx(1, 2), cplx(1, 2)) == 0.0);
  // 0 to infinity along the positive real axis: the integral over [1, inf)
  // equals the one over [0, 1] after r -> 1/r.
  const double half = simpson([](double r) { return 1.0 / (1.0 + r * r); }, 0.0, 1.0, 2000);
  CHECK(std::abs(spherical_distance(0.0, SpherePoint::infinity()) - 2.0 * half) < 1e-12);
  CHECK(std::abs(2.0 * half - kPi / 2) < 1e-12);
  for (cplx u : {cplx(0), cplx(1), cplx(1, 1)}) {
    CHECK(std::abs(spherical_distance(u, SpherePoint(u).antipode()) - kPi / 2) < 1e-12);
  }
  // Arclength along a short straight segment matches the closed form.
  const cplx a(0.3, -0.2), b(0.9, 0.4);
  const double arc = simpson(
      [&](double s) {
        const cplx w = a + s * (b - a);
        return std::abs(b - a) / (1.0 + std::norm(w));
      },
      0.0, 1.0, 2000);
  // The straight segment is not a geodesic, so it only bounds from above.
  CHECK(spherical_distance(a, b) <= arc + 1e-12);
  CHECK(spherical_distance(a, b) > 0.95 * arc);
}

TEST_CASE("spherical distance is invariant under rotations and w -> -1/w") {
  Rng rng(3);
  const Moebius flip(0, 1, -1, 0);
  for (int i = 0; i < 50; ++i) {
    const cplx u = rng.in_box(3), v = rng.in_box(3);
    const double d = spherical_distance(u, v);
    const Moebius rot = Moebius::homothety(std::polar(1.0, rng.uniform(0, 2 * kPi)));
    CHECK(std::abs(spherical_distance(rot(u), rot(v)) - d) <= 1e-8);
    CHECK(std::abs(spherical_distance(flip(u), flip(v)) - d) <= 1e-8);
  }
}

TEST_CASE("derivative norm") {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const cplx w = rng.in_box(3);
    CHECK(std::abs(derivative_norm(Moebius::identity(), w) - 1.0) < 1e-14);
  }
  const cplx lambda(0.3, 0.7);
  for (int i = 0; i < 10; ++i) {
    const cplx w = rng.in_box(3);
    const double expected =
        (1 + std::norm(w)) / (std::abs(lambda) * std::norm(w) + 1.0 / std::abs(lambda));
    CHECK(std::abs(derivative_norm(Moebius::homothety(lambda), w) - expected) < 1e-12);
  }
  for (int i = 0; i < 100; ++i) {
    const Moebius f = rng.moebius(), g = rng.moebius();
    const cplx w = rng.in_box(3);
    const double lhs = derivative_norm(g * f, w);
    const double rhs = derivative_norm(g, f(w)) * derivative_norm(f, w);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
  }
  // Continuity at infinity.
  const Moebius m(1, 2, 3, 7);
  CHECK(std::abs(derivative_norm(m, SpherePoint::infinity()) - derivative_norm(m, cplx(1e8, 0))) <
        1e-6);
}

TEST_CASE("classify and trace squared") {
  CHECK(classify(Moebius(1, 1, 0, 1)) == MoebiusClass::parabolic);
  CHECK(classify(Moebius::homothety(2.0)) == MoebiusClass::hyperbolic);
  CHECK(std::abs(trace_squared(Moebius::homothety(2.0)) - 4.5) < 1e-14);
  CHECK(classify(Moebius::homothety(std::polar(1.0, kPi * std::sqrt(2.0)))) ==
        MoebiusClass::elliptic);
  CHECK(classify(Moebius::homothety(cplx(2, 1))) == MoebiusClass::loxodromic);
  CHECK(classify(Moebius::identity()) == MoebiusClass::identity);
  CHECK(std::abs(trace_squared(Moebius::identity()) - 4.0) < 1e-15);
  const cplx lambda(0.4, 1.3);
  CHECK(std::abs(trace_squared(Moebius::homothety(lambda)) - (lambda + 2.0 + 1.0 / lambda)) < 1e-13);
  const Moebius m(1, 2, 3, 7);
  CHECK(trace_squared(m) == trace_squared(m.negated()));

  Rng rng(5);
  const Moebius samples[] = {Moebius(1, 1, 0, 1), Moebius::homothety(2.0),
                             Moebius::homothety(std::polar(1.0, 1.0)),
                             Moebius::homothety(cplx(2, 1))};
  for (int i = 0; i < 50; ++i) {
    const Moebius g = rng.moebius();
    const Moebius& m = samples[i % 4];
    CHECK(classify(g * m * g.inverse()) == classify(m));
  }
}

TEST_CASE("fixed points") {
  const auto fp = fixed_points(Moebius::homothety(0.25));
  CHECK(std::abs(fp.first.value()) < 1e-15);
  REQUIRE(fp.second.has_value());
  CHECK(fp.second->is_infinity());
  const Moebius par(1, 1, 0, 1);
  CHECK(fixed_points(par).first.is_infinity());
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const Moebius m = rng.moebius();
    const auto f = fixed_points(m);
    CHECK(spherical_distance(m(f.first), f.first) < 1e-9);
    if (f.second) CHECK(spherical_distance(m(*f.second), *f.second) < 1e-9);
  }
}

TEST_CASE("reflection in circles") {
  const Circle unit = Circle::round(0.0, 1.0);
  CHECK(std::abs(reflect(unit, cplx(2.0)).value() - 0.5) < 1e-15);
  Rng rng(7);
  const Circle c = Circle::round(cplx(0.5, -1.0), 1.7);
  for (int i = 0; i < 20; ++i) {
    const cplx on = c.center() + std::polar(c.radius(), rng.uniform(0, 2 * kPi));
    CHECK(std::abs(reflect(c, on).value() - on) < 1e-12);
    const cplx w = rng.in_box(4);
    CHECK(std::abs(reflect(c, reflect(c, w)).value() - w) < 1e-12);
  }
  const Circle line = Circle::line(cplx(0, 0), cplx(1, 1));
  CHECK(std::abs(reflect(line, cplx(1, 0)).value() - cplx(0, 1)) < 1e-15);
}

TEST_CASE("orthocircle") {
  const double theta = kPi / 3;
  const cplx a = std::polar(1.0, theta), b = std::polar(1.0, -theta);
  // Oracle: by symmetry the center c is real; bisect |c - a|^2 = c^2 - 1.
  double lo = 1.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = std::norm(mid - a) - (mid * mid - 1.0);
    (f > 0 ? lo : hi) = mid;
  }
  const Circle c = orthocircle(a, b);
  CHECK(std::abs(c.center() - lo) < 1e-10);
  CHECK(std::abs(c.radius() - std::sqrt(lo * lo - 1.0)) < 1e-10);
  CHECK(std::abs(c.radius() - std::sqrt(3.0)) < 1e-10);

  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const cplx u = std::polar(1.0, rng.uniform(0, 2 * kPi));
    const cplx v = std::polar(1.0, rng.uniform(0, 2 * kPi));
    if (std::abs(u - v) < 1e-3 || std::abs(u + v) < 1e-3) continue;
    const Circle k = orthocircle(u, v);
    CHECK(std::abs(k.distance_to(u)) < 1e-10);
    CHECK(std::abs(k.distance_to(v)) < 1e-10);
    CHECK(std::abs(std::norm(k.center()) - k.radius() * k.radius() - 1.0) < 1e-10 * std::norm(k.center()));
    for (int j = 0; j < 50; ++j) {
      const cplx z = rng.in_disc(1.0);
      const SpherePoint r = reflect(k, z);
      CHECK(r.is_finite());
      CHECK(std::abs(r.value()) < 1.0 + 1e-12);
    }
  }
  const Circle diam = orthocircle(cplx(1.0), cplx(-1.0));
  CHECK(diam.is_line());
  CHECK_THROWS_AS(orthocircle(cplx(1.0), cplx(-1.0), {kDefaultTol, false}), NumericError);
  try {
    orthocircle(cplx(1.0), cplx(-1.0), {kDefaultTol, false});
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::AntipodalVertices);
  }
  CHECK_THROWS_AS(orthocircle(cplx(1.0), cplx(1.0)), NumericError);
}

TEST_CASE("circle images under Moebius maps") {
  const Circle c = Circle::round(cplx(0.2, 0.1), 0.3);
  const Moebius m = disc_automorphism(cplx(0.3, -0.2), 0.7);
  const Circle img = c.transformed(m);
  for (int i = 0; i < 16; ++i) {
    const cplx w = c.center() + std::polar(c.radius(), 2 * kPi * i / 16);
    CHECK(std::abs(img.distance_to(m(w).value())) < 1e-12);
  }
}
