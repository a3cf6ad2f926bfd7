#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rhol/error.hpp"
#include "rhol/riccati_family.hpp"
#include "rhol/transport.hpp"
#include "support.hpp"

using namespace rhol;

namespace {

const std::vector<cplx> kRoots = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};

RiccatiSystem constant_system(cplx a0, cplx a1, cplx a2) {
  return RiccatiSystem(RationalMap(a0), RationalMap(a1), RationalMap(a2));
}

}  // namespace

TEST_CASE("transport of trivial and nilpotent systems") {
  const RiccatiSystem nil = constant_system(1.0, 0.0, 0.0);
  const Frame still = transport(nil, BasePath{{cplx(0.3, 0.1), cplx(0.3, 0.1)}});
  CHECK(still.H.equal_up_to_sign(Moebius::identity(), 1e-15));
  // H' = [[0,1],[0,0]] H along 0 -> T: H = [[1, T], [0, 1]].
  const cplx T(1.5, -0.5);
  const Frame f = transport(nil, segment(0.0, T));
  CHECK(f.H.distance_up_to_sign(Moebius(1.0, T, 0.0, 1.0)) < 1e-12);
  // Diagonal system: H = diag(e^{s/2}, e^{-s/2}) with s = alpha1 * T.
  const RiccatiSystem diag = constant_system(0.0, cplx(0.4, 0.2), 0.0);
  const Frame g = transport(diag, segment(0.0, T));
  const cplx e = std::exp(0.5 * cplx(0.4, 0.2) * T);
  CHECK(g.H.distance_up_to_sign(Moebius(e, 0.0, 0.0, 1.0 / e)) < 1e-12);
}

TEST_CASE("transport composes along concatenated paths") {
  const RiccatiSystem sys = explicit_riccati(cplx(0.3, 0.1));
  const BasePath p{{0.0, cplx(0.4, 0.3), cplx(0.2, 0.7)}};
  const BasePath q{{cplx(0.2, 0.7), cplx(-0.5, 0.5), cplx(-0.6, -0.2)}};
  const Moebius hp = holonomy(sys, p), hq = holonomy(sys, q);
  const Moebius hpq = holonomy(sys, p.then(q));
  CHECK(hpq.distance_up_to_sign(hq * hp) <= 1e-8);
  // Continuing from a frame is the same as composing.
  const Frame fp = transport(sys, p);
  const Frame fpq = transport(sys, q, fp);
  CHECK(fpq.H.distance_up_to_sign(hpq) <= 1e-8);
  // Back and forth is the identity.
  CHECK(holonomy(sys, p.then(p.reversed())).equal_up_to_sign(Moebius::identity(), 1e-8));
}

TEST_CASE("refinement independence and determinant drift") {
  const RiccatiSystem sys = explicit_riccati(0.0);
  const TransportOptions opt;
  BasePath p{{0.0, cplx(0.5, 0.5), cplx(0.0, 1.5), cplx(-1.2, 0.3)}};
  const Frame coarse = transport(sys, p);
  p.refinement = 0.1;
  const Frame fine = transport(sys, p);
  p.refinement = 0.05;
  const Frame finer = transport(sys, p);
  CHECK(fine.H.distance_up_to_sign(finer.H) <= 10 * opt.err_tol);
  CHECK(coarse.H.distance_up_to_sign(finer.H) <= 10 * opt.err_tol);
  CHECK(finer.accumulated_error <= 1e-9 * p.length());
  CHECK(std::abs(finer.H.det() - 1.0) <= 1e-9);
}

TEST_CASE("path-homotopic paths give the same frame") {
  const RiccatiSystem sys = explicit_riccati(cplx(0.3, 0.1));
  const BasePath p{{0.0, cplx(0.5, 0.2), cplx(0.6, 0.9)}};
  const BasePath q{{0.0, cplx(0.1, 0.6), cplx(0.3, 1.2), cplx(0.6, 0.9)}};
  REQUIRE(homotopic_by_winding(p, q, sys.poles()));
  CHECK(holonomy(sys, p).distance_up_to_sign(holonomy(sys, q)) <= 1e-7);
  // Going around i on the other side is a different class.
  const BasePath r{{0.0, cplx(-0.5, 0.5), cplx(-0.2, 1.4), cplx(0.6, 0.9)}};
  CHECK_FALSE(homotopic_by_winding(p, r, sys.poles()));
  CHECK(holonomy(sys, p).distance_up_to_sign(holonomy(sys, r)) > 1e-3);
}

TEST_CASE("pole margin and loop closure are enforced") {
  const RiccatiSystem sys = explicit_riccati(0.0);
  CHECK_THROWS_AS(transport(sys, segment(0.0, cplx(1.0005, 0.0))), NumericError);
  try {
    transport(sys, segment(cplx(0.5, 0.0), cplx(1.5, 0.0)));
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::PoleTooClose);
  }
  try {
    monodromy_representation(sys, 0.0, {segment(0.0, 0.5)});
    CHECK(false);
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::LoopNotClosed);
  }
  CHECK(monodromy_representation(sys, 0.0, {}).empty());
}

TEST_CASE("peripheral monodromy of the explicit family is parabolic") {
  for (cplx lambda : {cplx(0.0), cplx(0.3, 0.1)}) {
    const RiccatiSystem sys = explicit_riccati(lambda);
    std::vector<BasePath> loops;
    for (cplx p : kRoots) loops.push_back(peripheral_loop(0.0, p, sys.poles()));
    const auto mono = monodromy_representation(sys, 0.0, loops);
    for (const Moebius& m : mono) {
      CHECK(std::abs(trace_squared(m) - 4.0) <= 1e-6);
      CHECK(classify(m, 1e-6) == MoebiusClass::parabolic);
    }
    // A small circle around 1 alone (not based at 0) is parabolic too.
    const Moebius small = holonomy(sys, circle_loop(1.0, 0.1, 0.0));
    CHECK(std::abs(trace_squared(small) - 4.0) <= 1e-6);
    // Reversed loops give inverses.
    const Moebius back = holonomy(sys, loops[0].reversed());
    CHECK((back * mono[0]).equal_up_to_sign(Moebius::identity(), 1e-7));
    // Peripheral loops around 1 and -1 do not commute.
    const Moebius comm = mono[0] * mono[2] * mono[0].inverse() * mono[2].inverse();
    CHECK(std::abs(trace_squared(comm) - 4.0) > 1e-3);
  }
}

TEST_CASE("loop helpers") {
  const BasePath c = circle_loop(cplx(1.0, 0.0), 0.2, 0.3);
  CHECK(c.vertices.size() == 65);
  CHECK(winding_number(c, 1.0) == 1);
  CHECK(winding_number(circle_loop(0.0, 1.0, 0.0, 64, false), 0.0) == -1);
  CHECK(winding_number(c, 0.0) == 0);
  const BasePath l = peripheral_loop(0.0, cplx(0, 1), kRoots);
  CHECK(winding_number(l, cplx(0, 1)) == 1);
  CHECK(winding_number(l, 1.0) == 0);
  // A connector through another pole detours around it.
  const BasePath d = peripheral_loop(-2.0, 2.0, {2.0, 0.0}, 0.15, 1e-3);
  CHECK(winding_number(d, 0.0) == 0);
  CHECK(winding_number(d, 2.0) == 1);
  for (std::size_t i = 1; i < d.vertices.size(); ++i) {
    CHECK(std::min(std::abs(d.vertices[i]), std::abs(d.vertices[i - 1])) >= 1.9e-3);
  }
}
