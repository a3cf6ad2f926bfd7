#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "rhol/moebius.hpp"
#include "rhol/ode.hpp"
#include "rhol/rational.hpp"

namespace rhol {

/// y' = alpha2 y^2 + alpha1 y + alpha0 over the t-line, with its pole set.
class RiccatiSystem {
 public:
  RiccatiSystem(RationalMap alpha0, RationalMap alpha1, RationalMap alpha2);

  const RationalMap& alpha0() const { return a0_; }
  const RationalMap& alpha1() const { return a1_; }
  const RationalMap& alpha2() const { return a2_; }
  /// Union of the coefficient poles, deduplicated within 1e-8.
  const std::vector<cplx>& poles() const { return poles_; }

  /// (alpha0, alpha1, alpha2) at t; throws PoleEvaluation at a pole.
  std::array<cplx, 3> eval(cplx t) const;
  /// Distance from t to the nearest pole (infinity when there are none).
  double pole_distance(cplx t) const;

 private:
  RationalMap a0_, a1_, a2_;
  std::vector<cplx> poles_;
};

struct BasePath {
  std::vector<cplx> vertices;
  /// Maximum segment length; longer segments are split evenly.
  double refinement = std::numeric_limits<double>::infinity();

  double length() const;
  cplx start() const { return vertices.front(); }
  cplx end() const { return vertices.back(); }
  BasePath reversed() const;
  /// This path followed by `next` (which must start where this one ends).
  BasePath then(const BasePath& next) const;
  /// Vertex list after applying `refinement`.
  std::vector<cplx> refined() const;
};

BasePath segment(cplx a, cplx b);

struct TransportOptions {
  double err_tol = 1e-10;
  double min_step = 1e-12;
  double pole_margin = 1e-3;
  double initial_step = 1e-2;
  double max_step = 0.25;
  long max_steps = 2'000'000;

  OdeOptions ode() const { return {err_tol, min_step, initial_step, max_step, max_steps}; }
};

/// SL2 solution matrix of H' = [[alpha1/2, alpha0], [-alpha2, -alpha1/2]] H.
struct Frame {
  Moebius H;
  cplx endpoint{0.0};
  double accumulated_error = 0.0;
};

/// Raw 2x2 state with its sign carried continuously along the path.
using Mat2 = CState<4>;
Mat2 to_mat(const Moebius& m);
Moebius from_mat(const Mat2& m);

/// Throws PoleTooClose when a segment comes within `margin` of a pole.
void check_path_margin(const RiccatiSystem& sys, const BasePath& path, double margin);

/// Integrates the linear lift along the path; start defaults to the identity.
Frame transport(const RiccatiSystem& sys, const BasePath& path,
                const std::optional<Frame>& start = std::nullopt, const TransportOptions& opt = {});

/// Fiber map from the start fiber to the end fiber along leaves, y -> H y.
Moebius holonomy(const RiccatiSystem& sys, const BasePath& path, const TransportOptions& opt = {});

/// Holonomy of each loop based at `basepoint`. Note that following loop g and
/// then loop h gives holonomy(h) * holonomy(g).
std::vector<Moebius> monodromy_representation(const RiccatiSystem& sys, cplx basepoint,
                                              const std::vector<BasePath>& loops,
                                              const TransportOptions& opt = {});

/// Closed polygon sampling of a circle, starting and ending at
/// center + radius e^{i start_angle}.
BasePath circle_loop(cplx center, double radius, double start_angle, int vertices = 64,
                     bool counterclockwise = true);

/// Loop from `basepoint` to a small circle around `puncture`, once around it
/// counterclockwise and back along the same connector. Connectors that pass
/// near another pole get a rectangular detour offset by 2 * pole_margin.
BasePath peripheral_loop(cplx basepoint, cplx puncture, const std::vector<cplx>& poles,
                         double radius = 0.15, double pole_margin = 1e-3, int vertices = 64);

/// Winding number of a closed polyline around p (sum of argument increments).
int winding_number(const BasePath& closed, cplx p);
/// Total argument swept around p by a polyline.
double swept_angle(const BasePath& path, cplx p);

/// True when P * Q^{-1} sweeps less than pi around every pole.
bool homotopic_by_winding(const BasePath& p, const BasePath& q, const std::vector<cplx>& poles);

}  // namespace rhol
