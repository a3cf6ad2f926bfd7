#include "rhol/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rhol/error.hpp"

namespace rhol {

SpherePoint SpherePoint::antipode() const {
  if (inf_) return SpherePoint(cplx(0.0, 0.0));
  if (z_ == cplx(0.0, 0.0)) return infinity();
  return SpherePoint(-1.0 / std::conj(z_));
}

double spherical_distance(const SpherePoint& u, const SpherePoint& v) {
  if (u.is_infinity() && v.is_infinity()) return 0.0;
  if (u.is_infinity()) return std::atan2(1.0, std::abs(v.value()));
  if (v.is_infinity()) return std::atan2(1.0, std::abs(u.value()));
  const cplx a = u.value();
  const cplx b = v.value();
  return std::atan2(std::abs(a - b), std::abs(1.0 + std::conj(a) * b));
}

double chordal_distance(const SpherePoint& u, const SpherePoint& v) {
  if (u.is_infinity() && v.is_infinity()) return 0.0;
  if (u.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(v.value()));
  if (v.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(u.value()));
  const cplx a = u.value();
  const cplx b = v.value();
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

std::string_view to_string(MoebiusClass c) {
  switch (c) {
    case MoebiusClass::identity: return "identity";
    case MoebiusClass::parabolic: return "parabolic";
    case MoebiusClass::elliptic: return "elliptic";
    case MoebiusClass::hyperbolic: return "hyperbolic";
    case MoebiusClass::loxodromic: return "loxodromic";
  }
  return "unknown";
}

Moebius::Moebius(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-300) || !(scale > 0.0) || !std::isfinite(std::abs(det)) ||
      std::abs(det) <= 1e-28 * scale * scale) {
    throw NumericError(ErrorKind::InvalidArgument, "singular Moebius matrix");
  }
  const cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

Moebius Moebius::homothety(cplx lambda) {
  const cplx r = std::sqrt(lambda);
  return Moebius(r, 0.0, 0.0, 1.0 / r);
}

Moebius Moebius::translation(cplx shift) { return Moebius(1.0, shift, 0.0, 1.0); }

namespace {

// Map sending z1 -> 0, z2 -> 1, z3 -> infinity.
Moebius to_standard(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3) {
  if (z1.is_infinity()) {
    const cplx b = z2.value() - z3.value();
    return Moebius(0.0, b, 1.0, -z3.value());
  }
  if (z2.is_infinity()) return Moebius(1.0, -z1.value(), 1.0, -z3.value());
  if (z3.is_infinity()) return Moebius(1.0, -z1.value(), 0.0, z2.value() - z1.value());
  const cplx p = z2.value() - z3.value();
  const cplx q = z2.value() - z1.value();
  return Moebius(p, -z1.value() * p, q, -z3.value() * q);
}

}  // namespace

Moebius Moebius::from_three_points(const SpherePoint& z1, const SpherePoint& z2,
                                   const SpherePoint& z3, const SpherePoint& w1,
                                   const SpherePoint& w2, const SpherePoint& w3) {
  return to_standard(w1, w2, w3).inverse() * to_standard(z1, z2, z3);
}

SpherePoint Moebius::apply(const SpherePoint& w) const {
  if (w.is_infinity()) {
    if (c_ == cplx(0.0, 0.0)) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  const cplx z = w.value();
  const cplx den = c_ * z + d_;
  if (den == cplx(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint((a_ * z + b_) / den);
}

double Moebius::entrywise_distance(const Moebius& o) const {
  return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                   std::abs(d_ - o.d_)});
}

double Moebius::distance_up_to_sign(const Moebius& o) const {
  return std::min(entrywise_distance(o), entrywise_distance(o.negated()));
}

Moebius operator*(const Moebius& l, const Moebius& r) {
  Moebius m(l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_, l.c_ * r.a_ + l.d_ * r.c_,
            l.c_ * r.b_ + l.d_ * r.d_, Moebius::Raw{});
  // Products of det-1 matrices drift slowly; renormalize once it shows.
  const cplx det = m.det();
  if (std::abs(det - 1.0) > 1e-12) {
    const cplx s = std::sqrt(det);
    m.a_ /= s;
    m.b_ /= s;
    m.c_ /= s;
    m.d_ /= s;
  }
  return m;
}

cplx trace_squared(const Moebius& m) {
  const cplx t = m.trace();
  return t * t;
}

double derivative_norm(const Moebius& m, const SpherePoint& w) {
  if (w.is_infinity()) return 1.0 / (std::norm(m.a()) + std::norm(m.c()));
  const cplx z = w.value();
  return (1.0 + std::norm(z)) / (std::norm(m.c() * z + m.d()) + std::norm(m.a() * z + m.b()));
}

MoebiusClass classify(const Moebius& m, double tol) {
  if (m.equal_up_to_sign(Moebius::identity(), tol)) return MoebiusClass::identity;
  const cplx t2 = trace_squared(m);
  if (std::abs(t2 - 4.0) <= tol) return MoebiusClass::parabolic;
  if (std::abs(t2.imag()) <= tol) {
    if (t2.real() >= -tol && t2.real() < 4.0) return MoebiusClass::elliptic;
    if (t2.real() > 4.0) return MoebiusClass::hyperbolic;
  }
  return MoebiusClass::loxodromic;
}

FixedPoints fixed_points(const Moebius& m) {
  // c z^2 + (d - a) z - b = 0
  const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(c) <= 1e-15 * scale) {
    // Affine: z -> (a z + b) / d fixes infinity and b / (d - a).
    if (std::abs(d - a) <= 1e-15 * scale) return {SpherePoint::infinity(), std::nullopt};
    const SpherePoint finite(b / (d - a));
    // Attracting first: |derivative| = |a/d|^... at the finite point is a/d.
    if (std::abs(a / d) < 1.0) return {finite, SpherePoint::infinity()};
    return {SpherePoint::infinity(), finite};
  }
  const cplx disc = std::sqrt((a + d) * (a + d) - 4.0);
  const cplx z1 = (a - d + disc) / (2.0 * c);
  const cplx z2 = (a - d - disc) / (2.0 * c);
  if (std::abs(disc) <= 1e-14 * scale) return {SpherePoint((a - d) / (2.0 * c)), std::nullopt};
  // Multiplier at a fixed point z is 1 / (c z + d)^2.
  if (std::abs(c * z1 + d) > std::abs(c * z2 + d)) return {SpherePoint(z1), SpherePoint(z2)};
  return {SpherePoint(z2), SpherePoint(z1)};
}

Circle Circle::round(cplx center, double radius) {
  if (!(radius > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "circle radius must be > 0");
  Circle c;
  c.center_ = center;
  c.radius_ = radius;
  return c;
}

Circle Circle::line(cplx p, cplx q) {
  if (p == q) throw NumericError(ErrorKind::InvalidArgument, "line needs two distinct points");
  Circle c;
  c.is_line_ = true;
  c.p_ = p;
  c.q_ = q;
  return c;
}

double Circle::distance_to(cplx w) const {
  if (!is_line_) return std::abs(w - center_) - radius_;
  const cplx dir = (q_ - p_) / std::abs(q_ - p_);
  return std::abs((std::conj(dir) * (w - p_)).imag());
}

Circle Circle::transformed(const Moebius& m) const {
  std::array<SpherePoint, 3> pts;
  if (is_line_) {
    pts = {SpherePoint(p_), SpherePoint(q_), SpherePoint::infinity()};
  } else {
    pts = {SpherePoint(center_ + radius_), SpherePoint(center_ + cplx(0.0, radius_)),
           SpherePoint(center_ - radius_)};
  }
  std::array<SpherePoint, 3> img;
  for (int i = 0; i < 3; ++i) img[i] = m.apply(pts[i]);
  for (int i = 0; i < 3; ++i) {
    if (img[i].is_infinity()) {
      return line(img[(i + 1) % 3].value(), img[(i + 2) % 3].value());
    }
  }
  const cplx z1 = img[0].value(), z2 = img[1].value(), z3 = img[2].value();
  // Circumcenter of three points.
  const cplx w = (z3 - z1) / (z2 - z1);
  if (std::abs(w.imag()) < 1e-14 * std::abs(w)) return line(z1, z2);
  const cplx center = (z2 - z1) * (w - std::norm(w)) / (2.0 * cplx(0.0, 1.0) * w.imag()) + z1;
  return round(center, std::abs(z1 - center));
}

SpherePoint reflect(const Circle& c, const SpherePoint& w) {
  if (c.is_line()) {
    if (w.is_infinity()) return w;
    const cplx p = c.line_p();
    const cplx dir = c.line_q() - p;
    return SpherePoint(p + dir * std::conj((w.value() - p) / dir));
  }
  if (w.is_infinity()) return SpherePoint(c.center());
  const cplx rel = w.value() - c.center();
  if (rel == cplx(0.0, 0.0)) return SpherePoint::infinity();
  return SpherePoint(c.center() + c.radius() * c.radius() / std::conj(rel));
}

Circle orthocircle(cplx a, cplx b, const OrthocircleOptions& opts) {
  if (std::abs(std::abs(a) - 1.0) > 1e-8 || std::abs(std::abs(b) - 1.0) > 1e-8) {
    throw NumericError(ErrorKind::InvalidArgument, "orthocircle vertices must lie on |z| = 1");
  }
  if (std::abs(a - b) <= opts.tol) {
    throw NumericError(ErrorKind::DegenerateVertices, "coincident vertices");
  }
  const double den = 1.0 + (a * std::conj(b)).real();
  if (std::abs(den) <= opts.tol) {
    if (!opts.allow_lines) {
      throw NumericError(ErrorKind::AntipodalVertices, "orthogonal circle is a diameter");
    }
    return Circle::line(a, b);
  }
  const cplx center = (a + b) / den;
  return Circle::round(center, std::abs(a - center));
}

Moebius disc_automorphism(cplx p, double theta) {
  const cplx rot = std::polar(1.0, theta);
  return Moebius(rot, -rot * p, -std::conj(p), 1.0);
}

}  // namespace rhol
