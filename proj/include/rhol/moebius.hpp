#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace rhol {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// A point of the Riemann sphere. Infinity is an explicit state, never a
/// large float.
class SpherePoint {
 public:
  constexpr SpherePoint() = default;
  constexpr SpherePoint(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  constexpr SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  constexpr bool is_infinity() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  /// Finite value; meaningless when `is_infinity()`.
  constexpr cplx value() const { return z_; }

  /// -1/conj(w); exchanges 0 and infinity.
  SpherePoint antipode() const;

  bool operator==(const SpherePoint& o) const {
    return inf_ == o.inf_ && (inf_ || z_ == o.z_);
  }

 private:
  cplx z_{0.0, 0.0};
  bool inf_ = false;
};

/// Geodesic distance for the metric |dw| / (1 + |w|^2). The diameter of the
/// sphere is pi/2 in this normalization.
double spherical_distance(const SpherePoint& u, const SpherePoint& v);

/// Chordal distance 2|u-v| / sqrt((1+|u|^2)(1+|v|^2)) on the unit sphere.
double chordal_distance(const SpherePoint& u, const SpherePoint& v);

enum class MoebiusClass { identity, parabolic, elliptic, hyperbolic, loxodromic };

std::string_view to_string(MoebiusClass c);

/// Element of PSL(2,C) stored as one SL(2,C) representative. Every
/// constructor renormalizes to det = 1; comparisons are up to sign.
class Moebius {
 public:
  Moebius() = default;
  Moebius(cplx a, cplx b, cplx c, cplx d);

  static Moebius identity() { return {}; }
  /// w -> lambda * w.
  static Moebius homothety(cplx lambda);
  static Moebius translation(cplx shift);
  /// The unique map sending z1, z2, z3 to w1, w2, w3 (pairwise distinct).
  static Moebius from_three_points(const SpherePoint& z1, const SpherePoint& z2,
                                   const SpherePoint& z3, const SpherePoint& w1,
                                   const SpherePoint& w2, const SpherePoint& w3);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx det() const { return a_ * d_ - b_ * c_; }
  cplx trace() const { return a_ + d_; }

  Moebius inverse() const { return Moebius(d_, -b_, -c_, a_, Raw{}); }
  Moebius negated() const { return Moebius(-a_, -b_, -c_, -d_, Raw{}); }

  SpherePoint apply(const SpherePoint& w) const;
  SpherePoint operator()(const SpherePoint& w) const { return apply(w); }

  /// Largest entrywise difference after choosing the sign of `o` that
  /// minimizes it.
  double distance_up_to_sign(const Moebius& o) const;
  bool equal_up_to_sign(const Moebius& o, double tol = kDefaultTol) const {
    return distance_up_to_sign(o) <= tol;
  }
  /// Entrywise max difference without sign alignment.
  double entrywise_distance(const Moebius& o) const;

  friend Moebius operator*(const Moebius& lhs, const Moebius& rhs);

 private:
  struct Raw {};
  Moebius(cplx a, cplx b, cplx c, cplx d, Raw) : a_(a), b_(b), c_(c), d_(d) {}

  cplx a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

/// Composition: (lhs * rhs)(w) = lhs(rhs(w)).
Moebius operator*(const Moebius& lhs, const Moebius& rhs);

inline SpherePoint apply(const Moebius& m, const SpherePoint& w) { return m.apply(w); }
inline Moebius compose(const Moebius& outer, const Moebius& inner) { return outer * inner; }
inline Moebius inverse(const Moebius& m) { return m.inverse(); }

/// (a + d)^2; independent of the sign representative.
cplx trace_squared(const Moebius& m);

/// Spherical norm of the derivative, |m'(w)| (1+|w|^2) / (1+|m(w)|^2),
/// extended continuously to the poles of m and to infinity.
double derivative_norm(const Moebius& m, const SpherePoint& w);

/// Classification by tr^2 with a tolerance band; ties go to parabolic.
MoebiusClass classify(const Moebius& m, double tol = 1e-8);

/// Parabolic/elliptic/... fixed points (one or two). Returns the attracting
/// one first for loxodromic maps.
struct FixedPoints {
  SpherePoint first;
  std::optional<SpherePoint> second;
};
FixedPoints fixed_points(const Moebius& m);

/// Euclidean circle or a line (circle through infinity).
class Circle {
 public:
  static Circle round(cplx center, double radius);
  static Circle line(cplx p, cplx q);

  bool is_line() const { return is_line_; }
  cplx center() const { return center_; }
  double radius() const { return radius_; }
  /// For lines: two distinct points on the line.
  cplx line_p() const { return p_; }
  cplx line_q() const { return q_; }

  /// Signed offset from the circle; zero on it (Euclidean, lines included).
  double distance_to(cplx w) const;
  /// Image of the circle under a Moebius map (three-point reconstruction).
  Circle transformed(const Moebius& m) const;

 private:
  cplx center_{0.0};
  double radius_ = 1.0;
  cplx p_{0.0}, q_{1.0};
  bool is_line_ = false;
};

/// Anti-holomorphic inversion in a circle (reflection in a line).
SpherePoint reflect(const Circle& c, const SpherePoint& w);

struct OrthocircleOptions {
  double tol = kDefaultTol;
  /// When false, antipodal vertices raise AntipodalVertices instead of
  /// returning the diameter line.
  bool allow_lines = true;
};

/// The circle through a and b (on the unit circle) orthogonal to it.
Circle orthocircle(cplx a, cplx b, const OrthocircleOptions& opts = {});

/// The disc automorphism z -> e^{i theta} (z - p) / (1 - conj(p) z).
Moebius disc_automorphism(cplx p, double theta);

}  // namespace rhol
