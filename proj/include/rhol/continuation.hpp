#pragma once

#include <optional>
#include <vector>

#include "rhol/moebius.hpp"
#include "rhol/projective.hpp"
#include "rhol/rational.hpp"
#include "rhol/transport.hpp"

namespace rhol {

/// A point of the continuation of D^{-1}: base point t stored in the chart t,
/// s = 1/t, or a cusp chart zeta = log(x - p) around a double pole p of q
/// (x being t or s), the frame whose -b/a is the fiber value, and the
/// spherical arclength travelled by t so far.
struct GermState {
  cplx x{0.0};
  bool reciprocal_chart = false;
  /// Set in a cusp chart: the puncture p in the t or s coordinate.
  std::optional<cplx> cusp;
  Frame frame;
  SpherePoint z;
  double arclength = 0.0;

  /// Base point on the sphere.
  SpherePoint t() const;
};

enum class ContinuationStatus { completed, singular, budget_exceeded };
enum class SingularKind { none, puncture_approach, escape_to_infinity, step_collapse };

std::string_view to_string(ContinuationStatus s);
std::string_view to_string(SingularKind k);

struct TrackPoint {
  cplx x;
  bool reciprocal_chart = false;
  std::optional<cplx> cusp;
};

struct ContinuationOutcome {
  ContinuationStatus status = ContinuationStatus::completed;
  GermState final;
  SingularKind singular_kind = SingularKind::none;
  double parameter_reached = 0.0;
  /// Fiber point where continuation failed (fiber path at parameter_reached).
  SpherePoint singular_point;
  /// Puncture approached, when singular_kind is puncture_approach.
  std::optional<cplx> puncture;
  std::vector<TrackPoint> track;
  long steps = 0;
};

struct ContinuationOptions {
  TransportOptions transport{};
  /// Spherical t-track length cap as a multiple of the fiber path length.
  double budget_factor = 50.0;
  /// Switch between t and 1/t when |chart coordinate| exceeds this.
  double chart_switch = 1.6;
  /// Enter the cusp chart of a double pole closer than cusp_enter, leave it
  /// beyond cusp_exit.
  double cusp_enter = 0.02;
  double cusp_exit = 0.05;
  /// Re zeta below -cusp_depth counts as reaching the puncture. The fiber
  /// value is then within about |A| / cusp_depth of the cusp's asymptotic
  /// value, where D ~ w* + A / zeta.
  double cusp_depth = 1e5;
  /// |phi'| below this is a critical value of D.
  double derivative_floor = 1e-12;
  long max_steps = 400'000;
  double initial_step = 1e-3;
  double max_step = 0.05;
};

/// Germ at the structure's basepoint (identity frame, z = 0).
GermState basepoint_germ(const ProjectiveStructure& ps);

/// Lifts the fiber path through D: tracks t(s) with phi(t(s)) = fiber(s).
/// `budget` overrides the arclength cap. Throws InconsistentStart when the
/// start state is not a consistent germ at the start of the fiber path.
ContinuationOutcome continue_inverse_developing(const ProjectiveStructure& ps, const GermState& start,
                                                const BasePath& fiber_path,
                                                std::optional<double> budget = std::nullopt,
                                                const ContinuationOptions& opt = {});

/// Developing value re-computed by transporting along a recorded t-track.
SpherePoint redevelop(const ProjectiveStructure& ps, const GermState& start,
                      const std::vector<TrackPoint>& track);

struct ProbeResult {
  double angle = 0.0;
  bool singular = false;
  /// Schedule radius whose ray first turned singular (or the last one).
  double radius = 0.0;
  double parameter = 1.0;
  SpherePoint endpoint;
  SingularKind kind = SingularKind::none;
};

/// For each of `directions` rays from the basepoint germ's value, continues
/// along rays of increasing radius from the schedule until one turns singular.
std::vector<ProbeResult> natural_boundary_probe(const ProjectiveStructure& ps, int directions,
                                                const std::vector<double>& radius_schedule,
                                                const ContinuationOptions& opt = {});

struct ShadowStep {
  std::vector<int> word;  // letters: k for gens[k], -(k+1) for its inverse; beta = word[0] * word[1] * ...
  Moebius beta;
  SpherePoint u, v;
  double distance_to_target = 0.0;
  double log_derivative = 0.0;  // log |D A_n|(z0)
};

struct ShadowResult {
  std::vector<Moebius> A;
  std::vector<ShadowStep> steps;
  double delta = 0.0;
  double initial_distance = 0.0;
};

/// Greedy construction of beta_1, beta_2, ...: beta_n maps (u_n, v_n) to
/// points delta/2-close to z0 and its antipode with |D beta_n|(u_n) >= 4 and
/// |D beta_n|(v_n) <= 1/4, where (u_1, v_1) = (target, antipode of target)
/// and (u_{n+1}, v_{n+1}) = beta_n (u_n, v_n). A_n = (beta_n ... beta_1)^{-1}.
/// Among admissible words the shortest wins, then the one landing closest.
/// Throws NoCandidateWord naming the failing step.
ShadowResult shadowing_word_sequence(const std::vector<Moebius>& gens, const SpherePoint& target,
                                     const SpherePoint& z0, double delta, int max_word_len, int steps);

struct CurveHit {
  cplx t;
  cplx y;
  int iterations = 0;
  double residual = 0.0;
  double slope = 0.0;  // |g'(t*)|
};

/// Follows the leaf through (t0, y0) along base_path, then Newton-solves
/// y_leaf(t) = curve(t) from the path end. Throws NewtonDiverged or
/// TangencyNearby.
CurveHit holonomy_to_curve(const RiccatiSystem& sys, cplx t0, cplx y0, const BasePath& base_path,
                           const RationalMap& curve, double newton_tol = 1e-12,
                           const TransportOptions& opt = {});

struct PainleveResult {
  ContinuationOutcome outcome;
  cplx y;
  /// |(int R dx - int S dy)| accumulated along the path.
  double conserved_drift = 0.0;
  double path_length = 0.0;
  bool exact_primitives = false;
};

/// Integrates dy/dx = R(x)/S(y) along x_path from (x0, y0).
PainleveResult painleve_continue(const RationalMap& R, const RationalMap& S, cplx x0, cplx y0,
                                 const BasePath& x_path, const TransportOptions& opt = {});

}  // namespace rhol
