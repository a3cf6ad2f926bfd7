#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "rhol/moebius.hpp"

namespace rhol {

inline constexpr int kMaxDegree = 64;

/// Dense complex polynomial, coefficients stored lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, cplx c = 1.0);
  /// prod (x - r_i)
  static Polynomial from_roots(const std::vector<cplx>& roots);

  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const;
  cplx leading() const { return coeffs_.empty() ? cplx(0.0) : coeffs_.back(); }

  cplx operator()(cplx x) const;
  /// sum |c_k| |x|^k, the natural scale for judging |p(x)| ~ 0.
  double magnitude_at(cplx x) const;

  Polynomial derivative() const;
  Polynomial antiderivative() const;
  /// Quotient of division by (x - r); the remainder is discarded.
  Polynomial deflate(cplx r) const;
  /// x^n p(1/x) with n = degree.
  Polynomial reversed() const;

  /// All roots (with multiplicity) by Aberth iteration plus Newton polish.
  std::vector<cplx> roots() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// A root of a denominator together with its multiplicity.
struct Pole {
  cplx location;
  int order = 1;
};

/// Rational function of one complex variable. The denominator is kept in
/// factored form (leading constant times prod (x - p)^m) so that pole
/// bookkeeping never relies on re-factoring; common roots with the numerator
/// are cancelled after every operation.
class RationalMap {
 public:
  RationalMap() : RationalMap(Polynomial{}) {}
  RationalMap(const Polynomial& p);  // NOLINT(google-explicit-constructor)
  RationalMap(cplx c) : RationalMap(Polynomial::constant(c)) {}  // NOLINT
  RationalMap(const Polynomial& num, const Polynomial& den);
  RationalMap(const Polynomial& num, cplx den_lead, std::vector<Pole> poles);

  const Polynomial& numerator() const { return num_; }
  Polynomial denominator() const;
  cplx denominator_leading() const { return lead_; }
  const std::vector<Pole>& poles() const { return poles_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return poles_.empty(); }

  /// Throws PoleEvaluation at a pole; never returns NaN for a pole.
  cplx operator()(cplx x) const;
  /// Value on the sphere (infinity at a pole).
  SpherePoint eval_sphere(cplx x) const;
  /// Pole order at x (0 when regular), matching within `tol`.
  int pole_order_at(cplx x, double tol = 1e-8) const;
  /// Coefficient of (x - p)^(-k) in the Laurent expansion at the pole p.
  cplx laurent_coefficient(cplx p, int k, double tol = 1e-8) const;

  RationalMap derivative() const;
  /// f(1/s) as a rational function of s.
  RationalMap compose_reciprocal() const;

  friend RationalMap operator+(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator-(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator*(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator/(const RationalMap& a, const RationalMap& b);
  RationalMap operator-() const;

 private:
  void reduce();
  cplx den_value(cplx x) const;

  Polynomial num_;
  cplx lead_{1.0};
  std::vector<Pole> poles_;
};

/// Cluster nearby roots into poles with multiplicity.
std::vector<Pole> cluster_roots(const std::vector<cplx>& roots, double tol);

}  // namespace rhol
