#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rhol/error.hpp"
#include "rhol/projective.hpp"
#include "support.hpp"

using namespace rhol;

namespace {

const std::vector<cplx> kRoots = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};

ProjectiveStructure explicit_structure(cplx lambda) {
  return from_quadratic(QuadDifferential{explicit_schwarzian(lambda), kRoots}, 0.0);
}

// r_i o r_j for circles orthogonal to the unit circle, from the inversion
// formula r(z) = c + R^2 / conj(z - c), written as a matrix.
Moebius inversion_pair(cplx ci, double ri, cplx cj, double rj) {
  const cplx dbar = std::conj(cj) - std::conj(ci);
  const double Ri = ri * ri, Rj = rj * rj;
  // r_j(z) = cj + Rj / conj(z - cj); conj(r_j(z) - ci) = dbar + Rj / (z - cj).
  // r_i(r_j(z)) = ci + Ri (z - cj) / (dbar (z - cj) + Rj).
  const cplx a = ci * dbar + Ri;
  const cplx b = ci * (Rj - dbar * cj) - Ri * cj;
  const cplx c = dbar;
  const cplx d = Rj - dbar * cj;
  return Moebius(a, b, c, d);
}

}  // namespace

TEST_CASE("structure of the zero quadratic differential is Moebius") {
  const ProjectiveStructure ps = from_quadratic(QuadDifferential{RationalMap(), {}}, 0.0);
  const Moebius T = holonomy(ps.companion, circle_loop(cplx(0.5, 0.2), 0.4, 0.0));
  CHECK(classify(T) == MoebiusClass::identity);
  // phi(t) = t along any path, since -b/a with H = [[1, t], [0, 1]].
  const Development d = developing_value(ps, BasePath{{0.0, cplx(0.3, 0.4), cplx(-0.2, 0.9)}});
  CHECK(std::abs(d.value.value() - cplx(0.2, -0.9)) < 1e-12);
}

TEST_CASE("companion system recovers the quadratic differential") {
  testing_support::Rng rng(11);
  const RationalMap q = explicit_schwarzian(0.0);
  const RationalMap back = schwarzian_of_riccati(companion_system(q));
  for (int i = 0; i < 40; ++i) {
    cplx t = rng.in_disc(2.0);
    if (std::abs(t * t * t * t - 1.0) < 0.1) continue;
    CHECK(std::abs(back(t) - q(t)) <= 1e-11 * std::max(1.0, std::abs(q(t))));
  }
}

TEST_CASE("from_quadratic validates the basepoint") {
  const ProjectiveStructure ps = explicit_structure(0.0);
  CHECK(ps.qd.punctures.size() == 4);
  CHECK(ps.base_frame.H.equal_up_to_sign(Moebius::identity(), 0.0));
  CHECK_THROWS_AS(from_quadratic(QuadDifferential{explicit_schwarzian(0.0), kRoots}, cplx(1.0005, 0.0)),
                  NumericError);
  try {
    from_quadratic(QuadDifferential{explicit_schwarzian(0.0), kRoots}, cplx(0.0, 0.9995));
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::PoleTooClose);
  }
}

TEST_CASE("developing value and its derivative") {
  const ProjectiveStructure ps = explicit_structure(cplx(0.3, 0.1));
  const Development at_base = developing_value(ps, BasePath{{0.0}});
  CHECK(at_base.value.value() == cplx(0.0));
  CHECK(std::abs(at_base.derivative + 1.0) < 1e-15);

  const BasePath p{{0.0, cplx(0.4, 0.2), cplx(0.5, 0.6)}};
  const Development d = developing_value(ps, p);
  // Centered differences on re-transported nearby endpoints.
  for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
    const double h = 1e-4;
    const Development plus = develop_frame(ps.companion, transport(ps.companion, segment(p.end(), p.end() + h * dir), d.frame));
    const Development minus = develop_frame(ps.companion, transport(ps.companion, segment(p.end(), p.end() - h * dir), d.frame));
    const cplx fd = (plus.value.value() - minus.value.value()) / (2.0 * h * dir);
    CHECK(std::abs(fd - d.derivative) <= 1e-6 * std::abs(d.derivative));
  }
  CHECK_THROWS_AS(developing_value(ps, segment(0.1, 0.3)), NumericError);
}

TEST_CASE("developing map is equivariant under monodromy") {
  const ProjectiveStructure ps = explicit_structure(0.0);
  const std::vector<BasePath> loops = standard_peripheral_loops();
  const std::vector<Moebius> mono = monodromy_representation(ps.companion, 0.0, loops);
  const BasePath p{{0.0, cplx(0.3, -0.2), cplx(0.45, 0.1)}};
  const SpherePoint plain = developing_value(ps, p).value;
  for (std::size_t k = 0; k < loops.size(); ++k) {
    const SpherePoint twisted = developing_value(ps, loops[k].then(p)).value;
    const SpherePoint expected = mono[k].inverse().apply(plain);
    CHECK(std::abs(twisted.value() - expected.value()) < 1e-7);
  }
}

TEST_CASE("frame cocycle along composable paths") {
  const ProjectiveStructure ps = explicit_structure(cplx(-0.2, 0.4));
  const BasePath p{{0.0, cplx(0.5, 0.1), cplx(0.6, 0.5)}};
  const BasePath q{{cplx(0.6, 0.5), cplx(0.1, 0.7), cplx(-0.5, 0.4)}};
  const Frame whole = transport(ps.companion, p.then(q));
  const Frame fp = transport(ps.companion, p);
  const Frame fq = transport(ps.companion, q);
  CHECK((fq.H * fp.H).distance_up_to_sign(whole.H) <= 1e-8);
}

TEST_CASE("trace map") {
  const std::vector<BasePath> loops = standard_peripheral_loops();
  const BasePath pair = loops[0].then(loops[1]);
  std::vector<cplx> lambdas;
  for (int k = 0; k < 10; ++k) lambdas.push_back(cplx(-0.5 + 0.1 * k, 0.05 * k));
  const std::vector<TraceSample> peripheral = trace_map_scan(lambdas, loops[0]);
  for (const TraceSample& s : peripheral) CHECK(std::abs(s.trace_squared - 4.0) <= 1e-6);
  const std::vector<TraceSample> at_zero = trace_map_scan({0.0}, pair);
  CHECK(at_zero[0].real);
  const std::vector<TraceSample> scan = trace_map_scan(lambdas, pair);
  double lo = 1e300, hi = -1e300;
  for (const TraceSample& s : scan) {
    lo = std::min(lo, std::abs(s.trace_squared));
    hi = std::max(hi, std::abs(s.trace_squared));
  }
  CHECK(hi - lo > 1e-3);
  CHECK_THROWS_AS(trace_map_scan({0.0}, segment(0.0, 0.3)), NumericError);
}

TEST_CASE("analytic and group-theoretic parabolicity agree") {
  for (cplx lambda : {cplx(0.0), cplx(0.3, 0.1), cplx(-1.0, 0.5)}) {
    const ParabolicReport rep = parabolic_type_check(QuadDifferential{explicit_schwarzian(lambda), kRoots});
    CHECK(rep.parabolic_type);
    const std::vector<Moebius> mono =
        monodromy_representation(explicit_riccati(lambda), 0.0, standard_peripheral_loops());
    for (const Moebius& m : mono) CHECK(std::abs(trace_squared(m) - 4.0) <= 1e-6);
  }
}

TEST_CASE("ideal triangle group from the cube roots of unity") {
  std::vector<cplx> v;
  for (int k = 0; k < 3; ++k) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0));
  const FuchsianGroup g = ideal_polygon_group(v);
  REQUIRE(g.generators.size() == 3);
  testing_support::Rng rng(5);
  for (std::size_t i = 0; i < 3; ++i) {
    const Moebius& m = g.generators[i];
    // Side circle through v_i and v_{i+1}: center sec(pi/3) at the midpoint
    // direction, radius tan(pi/3).
    auto center = [&](std::size_t j) { return 2.0 * std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / 3.0); };
    const Moebius oracle = inversion_pair(center(i), std::sqrt(3.0), center((i + 1) % 3), std::sqrt(3.0));
    CHECK(m.distance_up_to_sign(oracle) <= 1e-9);
    CHECK(std::abs(trace_squared(m) - 4.0) <= 1e-10);
    CHECK(classify(m) == MoebiusClass::parabolic);
    const cplx fixed = v[(i + 1) % 3];
    CHECK(std::abs(m.apply(SpherePoint(fixed)).value() - fixed) <= 1e-9);
    for (int k = 0; k < 20; ++k) {
      const cplx z = rng.in_disc(1.0);
      CHECK(std::abs(m.apply(SpherePoint(z)).value()) < 1.0);
    }
  }
}

TEST_CASE("ideal polygon groups commute with the rotation symmetry") {
  for (int n : {3, 4, 6}) {
    std::vector<cplx> v;
    for (int k = 0; k < n; ++k) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.1));
    const FuchsianGroup g = ideal_polygon_group(v);
    const Moebius rot = Moebius::homothety(std::polar(1.0, 2.0 * std::numbers::pi / n));
    for (int i = 0; i < n; ++i) {
      const Moebius conj = rot * g.generators[static_cast<std::size_t>(i)] * rot.inverse();
      CHECK(conj.distance_up_to_sign(g.generators[static_cast<std::size_t>((i + 1) % n)]) <= 1e-9);
    }
  }
}

TEST_CASE("ideal polygon input validation") {
  CHECK_THROWS_AS(ideal_polygon_group({1.0, cplx(0, 1)}), NumericError);
  CHECK_THROWS_AS(ideal_polygon_group({1.0, 1.0, cplx(0, 1)}), NumericError);
  try {
    ideal_polygon_group({1.0, -1.0, cplx(0, 1), cplx(0, -1)});
    FAIL("unordered vertices accepted");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateVertices);
  }
  CHECK_THROWS_AS(ideal_polygon_group({1.0, cplx(0, 1), 2.0}), NumericError);
}

TEST_CASE("orbit clouds of the ideal triangle group") {
  std::vector<cplx> v;
  for (int k = 0; k < 3; ++k) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0));
  const FuchsianGroup g = ideal_polygon_group(v);
  const std::vector<OrbitPoint> seed_only = limit_set_orbit(g, 0, SpherePoint(0.0));
  REQUIRE(seed_only.size() == 1);
  CHECK(seed_only[0].point.value() == cplx(0.0));

  // Maximal-length images within 0.05 of the unit circle.
  auto near_count = [&](int depth) {
    std::pair<long, long> out{0, 0};
    for_each_orbit_point(g.generators, depth, SpherePoint(0.0), [&](const SpherePoint& p, int len) {
      if (len != depth) return;
      ++out.second;
      if (std::abs(std::abs(p.value()) - 1.0) < 0.05) ++out.first;
    });
    return out;
  };
  auto fraction = [](std::pair<long, long> c) { return static_cast<double>(c.first) / static_cast<double>(c.second); };
  const auto c8 = near_count(8);
  CHECK(fraction(near_count(6)) <= fraction(near_count(7)));
  CHECK(fraction(near_count(7)) <= fraction(c8));
  // Frozen count: 463674 of 468750 (98.92%); depth 9 passes 99%.
  CHECK(c8.second == 468750);
  CHECK(c8.first == 463674);
  CHECK(fraction(near_count(9)) >= 0.99);

  // Invariance under the rotation by 2 pi / 3, which permutes the generators.
  const std::vector<OrbitPoint> cloud = limit_set_orbit(g, 5, SpherePoint(0.0));
  const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  double worst = 0.0;
  for (const OrbitPoint& p : cloud) {
    const cplx r = rot * p.point.value();
    double best = 1e300;
    for (const OrbitPoint& q : cloud) best = std::min(best, std::abs(q.point.value() - r));
    worst = std::max(worst, best);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("orbit enumeration counts reduced words") {
  const std::vector<Moebius> gens = {Moebius::translation(1.0), Moebius::translation(cplx(0.0, 1.0))};
  long count = 0;
  for_each_orbit_point(gens, 3, SpherePoint(0.0), [&](const SpherePoint&, int) { ++count; });
  // 1 + 4 + 4*3 + 4*9 reduced words.
  CHECK(count == 53);
  // Free abelian orbit: distinct lattice points with |m| + |n| <= 3.
  CHECK(limit_set_orbit(gens, 3, SpherePoint(0.0)).size() == 25);
}

TEST_CASE("Joergensen indicator separates discrete and non-discrete pairs") {
  const Moebius A(1.0, 1.0, 0.0, 1.0);
  // <A, B_c> with B_c = [[1, 0], [c, 1]] has tr [A, B_c] - 2 = c^2.
  const JorgensenWitness sanov = jorgensen_indicator({A, Moebius(1.0, 0.0, 2.0, 1.0)}, 3);
  CHECK(sanov.value >= 1.0);
  const JorgensenWitness dense = jorgensen_indicator({A, Moebius(1.0, 0.0, 0.5, 1.0)}, 3);
  CHECK(dense.value <= 0.25 + 1e-12);
  CHECK(dense.value > 0.0);

  // Commuting words never count, even through roundoff.
  const JorgensenWitness abelian = jorgensen_indicator({A, Moebius(1.0, cplx(0, 1), 0.0, 1.0)}, 3);
  CHECK(std::isinf(abelian.value));

  const FuchsianGroup g = ideal_polygon_group(kRoots);
  CHECK(jorgensen_indicator(g.generators, 3).value >= 1.0);
}
