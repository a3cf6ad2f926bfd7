#pragma once

#include <functional>
#include <vector>

#include "rhol/moebius.hpp"
#include "rhol/riccati_family.hpp"
#include "rhol/transport.hpp"

namespace rhol {

/// Projective structure given by q dz^2, realized through the companion
/// system (alpha0, alpha1, alpha2) = (1, 0, q/2). The developing map along a
/// path from the basepoint is phi = -b/a of the transported frame, so
/// phi(basepoint) = 0 and phi'(basepoint) = -1.
struct ProjectiveStructure {
  QuadDifferential qd;
  cplx basepoint;
  RiccatiSystem companion;
  Frame base_frame;
  TransportOptions opt;
};

RiccatiSystem companion_system(const RationalMap& q);

/// Throws PoleTooClose when the basepoint is within pole_margin of a puncture.
ProjectiveStructure from_quadratic(const QuadDifferential& qd, cplx basepoint,
                                   const TransportOptions& opt = {});

struct Development {
  SpherePoint value;
  /// d phi / dt, or d(1/phi)/dt when `in_reciprocal_chart`.
  cplx derivative;
  bool in_reciprocal_chart = false;
  Frame frame;
};

/// The frame determines phi = -b/a and phi' = -alpha0/a^2 at its endpoint.
Development develop_frame(const RiccatiSystem& sys, const Frame& frame);

Development developing_value(const ProjectiveStructure& ps, const BasePath& path);

struct TraceSample {
  cplx lambda;
  cplx trace_squared;
  bool real = false;
  /// Real and in [0, 4).
  bool elliptic_range = false;
};

/// T(lambda) = tr^2 of the holonomy of `loop` for explicit_riccati(lambda).
std::vector<TraceSample> trace_map_scan(const std::vector<cplx>& lambdas, const BasePath& loop,
                                        const TransportOptions& opt = {}, double real_tol = 1e-6);

/// The four standard peripheral loops of the explicit family at `basepoint`,
/// in the order 1, i, -1, -i.
std::vector<BasePath> standard_peripheral_loops(cplx basepoint = 0.0, double radius = 0.15,
                                                double pole_margin = 1e-3, int vertices = 64);

struct FuchsianGroup {
  std::vector<cplx> vertices;
  std::vector<Circle> side_circles;
  /// generators[i] = r_i o r_{i+1}, parabolic fixing vertices[i + 1].
  std::vector<Moebius> generators;
};

/// Throws DegenerateVertices for fewer than 3, coincident or unordered vertices.
FuchsianGroup ideal_polygon_group(const std::vector<cplx>& vertices, const OrthocircleOptions& opts = {});

struct OrbitPoint {
  SpherePoint point;
  int word_length = 0;
};

/// Calls `visit(point, length)` for the image of `seed` under every reduced
/// word of length <= depth in the generators and their inverses (depth-first,
/// deterministic order). No deduplication.
void for_each_orbit_point(const std::vector<Moebius>& gens, int depth, const SpherePoint& seed,
                          const std::function<void(const SpherePoint&, int)>& visit);

/// Smallest |tr^2 A - 4| + |tr [A, B] - 2| over non-commuting pairs of reduced
/// words of length <= max_len (letters k for gens[k], -(k+1) for its inverse).
/// A value below 1 violates Joergensen's inequality, so the group is not
/// discrete (up to the accuracy of the matrices).
struct JorgensenWitness {
  double value = 0.0;
  std::vector<int> word_a, word_b;
};
JorgensenWitness jorgensen_indicator(const std::vector<Moebius>& gens, int max_len);

/// Deduplicated orbit (points within 1e-10 keep the shortest word).
std::vector<OrbitPoint> limit_set_orbit(const std::vector<Moebius>& gens, int depth,
                                        const SpherePoint& seed);
std::vector<OrbitPoint> limit_set_orbit(const FuchsianGroup& g, int depth, const SpherePoint& seed);

}  // namespace rhol
