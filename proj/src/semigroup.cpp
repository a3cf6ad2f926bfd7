#include "rhol/semigroup.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rhol/error.hpp"

namespace rhol {

namespace {

constexpr int kBoundarySamples = 128;

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx horner_derivative(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) acc = acc * z + static_cast<double>(j) * c[j];
  return acc;
}

std::vector<cplx> circle_samples(double radius, int count = kBoundarySamples) {
  std::vector<cplx> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / count);
  return out;
}

// Winding number test against a closed polygon.
bool inside_polygon(const std::vector<cplx>& poly, cplx p) {
  double winding = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const cplx a = poly[k] - p;
    const cplx b = poly[(k + 1) % poly.size()] - p;
    winding += std::arg(b / a);
  }
  return std::abs(winding) > std::numbers::pi;
}

double sample_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& u : a)
    for (const cplx& v : b) best = std::min(best, std::norm(u - v));
  return std::sqrt(best);
}

double sample_diameter(const std::vector<cplx>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, std::norm(a[i] - a[j]));
  return std::sqrt(best);
}

double separation_of(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (inside_polygon(a, b.front()) || inside_polygon(b, a.front())) return 0.0;
  return sample_distance(a, b);
}

std::vector<cplx> image_of(const DiscMap& g, std::vector<cplx> pts) {
  for (cplx& p : pts) p = g(p);
  return pts;
}

// Calls fn(address) for every word of the given length, lexicographically.
template <class Fn>
void for_each_word(int letters, int length, Fn&& fn) {
  std::vector<int> word(static_cast<std::size_t>(length), 1);
  for (;;) {
    fn(word);
    int pos = length - 1;
    while (pos >= 0 && word[static_cast<std::size_t>(pos)] == letters) word[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) return;
    ++word[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

DiscMap DiscMap::moebius(const Moebius& m, double domain_radius) {
  DiscMap g;
  g.kind_ = Kind::moebius;
  g.m_ = m;
  g.radius_ = domain_radius;
  return g;
}

DiscMap DiscMap::affine(cplx scale, cplx offset, double domain_radius) {
  DiscMap g;
  g.kind_ = Kind::affine;
  g.m_ = Moebius(scale, offset, 0.0, 1.0);
  g.coeffs_ = {offset, scale};
  g.radius_ = domain_radius;
  return g;
}

DiscMap DiscMap::polynomial(std::vector<cplx> coefficients, double domain_radius) {
  if (coefficients.empty()) throw NumericError(ErrorKind::InvalidArgument, "empty polynomial");
  DiscMap g;
  g.kind_ = Kind::polynomial;
  g.coeffs_ = std::move(coefficients);
  g.radius_ = domain_radius;
  return g;
}

cplx DiscMap::operator()(cplx z) const {
  if (kind_ != Kind::moebius) return horner(coeffs_, z);
  const SpherePoint w = m_.apply(z);
  if (w.is_infinity()) throw NumericError(ErrorKind::DomainEscape, "Moebius map has a pole in its domain");
  return w.value();
}

cplx DiscMap::derivative(cplx z) const {
  if (kind_ != Kind::moebius) return horner_derivative(coeffs_, z);
  const cplx den = m_.c() * z + m_.d();
  return 1.0 / (den * den);
}

cplx DiscMap::inverse(cplx w) const {
  if (kind_ == Kind::moebius) {
    const SpherePoint z = m_.inverse().apply(w);
    if (z.is_infinity()) throw NumericError(ErrorKind::DomainEscape, "preimage is infinity");
    return z.value();
  }
  if (kind_ == Kind::affine) return (w - coeffs_[0]) / coeffs_[1];
  cplx z = w;
  for (int it = 0; it < 60; ++it) {
    const cplx step = ((*this)(z) - w) / derivative(z);
    z -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) return z;
  }
  throw NumericError(ErrorKind::NewtonDiverged, "polynomial inverse did not converge");
}

bool DiscMap::injective() const {
  switch (kind_) {
    case Kind::affine:
      return coeffs_[1] != cplx(0.0);
    case Kind::moebius:
      return std::abs(m_.c()) * radius_ < std::abs(m_.d());
    case Kind::polynomial:
      break;
  }
  double scale = 0.0;
  for (const cplx& c : coeffs_) scale = std::max(scale, std::abs(c));
  // 100 boundary points and 4 interior rings of 25.
  for (int ring = 0; ring <= 4; ++ring) {
    const double rad = radius_ * (ring == 0 ? 1.0 : ring / 5.0);
    for (const cplx& z : circle_samples(rad, ring == 0 ? 100 : 25))
      if (std::abs(derivative(z)) <= 1e-12 * scale) return false;
  }
  return true;
}

bool DiscMap::contracting() const {
  for (const cplx& z : circle_samples(radius_)) {
    if (kind_ == Kind::moebius && m_.apply(z).is_infinity()) return false;
    if (!(std::abs((*this)(z)) < radius_ - 1e-9)) return false;
  }
  return true;
}

bool DiscMap::is_affine() const {
  switch (kind_) {
    case Kind::affine:
      return true;
    case Kind::moebius:
      return std::abs(m_.c()) <= 1e-15 * std::abs(m_.d());
    case Kind::polynomial:
      break;
  }
  for (std::size_t j = 2; j < coeffs_.size(); ++j)
    if (coeffs_[j] != cplx(0.0)) return false;
  return true;
}

Moebius DiscMap::to_moebius() const {
  if (kind_ != Kind::polynomial) return m_;
  if (!is_affine()) throw NumericError(ErrorKind::InvalidArgument, "polynomial map is not Moebius");
  return Moebius(coeffs_.size() > 1 ? coeffs_[1] : cplx(0.0), coeffs_[0], 0.0, 1.0);
}

IFSystem IFSystem::make(std::vector<DiscMap> maps) {
  if (maps.empty()) throw NumericError(ErrorKind::InvalidArgument, "IFS needs at least one map");
  const double radius = maps.front().domain_radius();
  for (const DiscMap& g : maps) {
    if (g.domain_radius() != radius) throw NumericError(ErrorKind::InvalidArgument, "maps have different domains");
    if (!g.injective()) throw NumericError(ErrorKind::InvalidArgument, "map is not injective on its disc");
    if (!g.contracting()) throw NumericError(ErrorKind::InvalidArgument, "map is not contracting");
  }
  IFSystem ifs{std::move(maps), true};
  const std::vector<cplx> circle = circle_samples(radius);
  std::vector<std::vector<cplx>> images;
  for (const DiscMap& g : ifs.maps) images.push_back(image_of(g, circle));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (separation_of(images[i], images[j]) <= 1e-6) ifs.separation = false;
  return ifs;
}

std::vector<cplx> cylinder_boundary(const IFSystem& ifs, const std::vector<int>& address) {
  std::vector<cplx> pts = circle_samples(ifs.maps.front().domain_radius());
  for (auto it = address.rbegin(); it != address.rend(); ++it) {
    if (*it < 1 || *it > static_cast<int>(ifs.maps.size()))
      throw NumericError(ErrorKind::InvalidArgument, "address letter out of range");
    pts = image_of(ifs.maps[static_cast<std::size_t>(*it - 1)], std::move(pts));
  }
  return pts;
}

std::vector<AddressedPoint> limit_set(const IFSystem& ifs, int depth) {
  if (!ifs.separation) throw NumericError(ErrorKind::SeparationViolated, "IFS images are not disjoint");
  if (depth < 1) throw NumericError(ErrorKind::InvalidArgument, "depth must be >= 1");
  std::vector<AddressedPoint> out;
  for_each_word(static_cast<int>(ifs.maps.size()), depth, [&](const std::vector<int>& word) {
    cplx center = 0.0;
    for (auto it = word.rbegin(); it != word.rend(); ++it) center = ifs.maps[static_cast<std::size_t>(*it - 1)](center);
    out.push_back({word, center, sample_diameter(cylinder_boundary(ifs, word))});
  });
  return out;
}

std::vector<double> cylinder_separation(const IFSystem& ifs, int depth) {
  std::vector<double> out;
  const std::size_t letters = ifs.maps.size();
  // Level N cylinders, built as h_i applied to the level N-1 ones.
  std::vector<std::vector<cplx>> level{circle_samples(ifs.maps.front().domain_radius())};
  for (int n = 1; n <= depth; ++n) {
    std::vector<std::vector<cplx>> next;
    next.reserve(level.size() * letters);
    for (const DiscMap& g : ifs.maps)
      for (const auto& c : level) next.push_back(image_of(g, c));
    level = std::move(next);

    std::vector<cplx> centers(level.size());
    std::vector<double> radii(level.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
      cplx c = 0.0;
      for (const cplx& p : level[k]) c += p;
      c /= static_cast<double>(level[k].size());
      double rad = 0.0;
      for (const cplx& p : level[k]) rad = std::max(rad, std::abs(p - c));
      centers[k] = c;
      radii[k] = rad;
    }
    // Index = lexicographic rank of the address, so siblings (same prefix,
    // different last letter) are consecutive; they seed the pruning bound.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < level.size(); ++k)
      if ((k + 1) % letters != 0) best = std::min(best, separation_of(level[k], level[k + 1]));
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        if (std::abs(centers[i] - centers[j]) - radii[i] - radii[j] >= best) continue;
        best = std::min(best, separation_of(level[i], level[j]));
      }
    }
    out.push_back(best);
  }
  return out;
}

namespace {

// Image of the round circle |z - z0| = rho under m, through z -> cz + d,
// inversion and an affine map; exact up to rounding for tiny circles.
Circle circle_image(const Moebius& m, cplx z0, double rho) {
  const cplx c = m.c(), d = m.d();
  if (c == cplx(0.0)) return Circle::round((m.a() * z0 + m.b()) / d, std::abs(m.a() / d) * rho);
  const cplx u0 = c * z0 + d;
  const double R = std::abs(c) * rho;
  const double den = std::norm(u0) - R * R;
  if (den == 0.0) throw NumericError(ErrorKind::NotNested, "circle passes through the pole");
  const cplx v0 = std::conj(u0) / den;
  const double rv = R / std::abs(den);
  // m(z) = a/c - 1 / (c (cz + d)).
  return Circle::round(m.a() / c - v0 / c, rv / std::abs(c));
}

}  // namespace

double annulus_modulus(const Circle& outer, const Circle& inner) {
  if (outer.is_line() || inner.is_line()) throw NumericError(ErrorKind::NotNested, "ring boundary is a line");
  const double R1 = outer.radius();
  const double R2 = inner.radius();
  const double d = std::abs(outer.center() - inner.center());
  if (!(d + R2 < R1)) throw NumericError(ErrorKind::NotNested, "inner circle is not strictly inside");
  const double delta = std::abs(d * d - R1 * R1 - R2 * R2) / (2.0 * R1 * R2);
  return std::acosh(std::max(delta, 1.0));
}

double annulus_modulus(double outer_radius, const Circle& inner) {
  if (!(outer_radius > 0.0)) throw NumericError(ErrorKind::NotNested, "outer radius must be positive");
  return annulus_modulus(Circle::round(0.0, outer_radius), inner);
}

ModulusGrowth modulus_growth_check(const IFSystem& ifs, int max_depth) {
  if (max_depth < 1) throw NumericError(ErrorKind::InvalidArgument, "max_depth must be >= 1");
  const double R = ifs.maps.front().domain_radius();
  std::vector<Moebius> gens;
  std::vector<double> single;
  for (const DiscMap& g : ifs.maps) {
    gens.push_back(g.to_moebius());
    single.push_back(annulus_modulus(R, circle_image(gens.back(), 0.0, R)));
  }
  ModulusGrowth res;
  res.c_estimate = std::numeric_limits<double>::infinity();
  res.min_modulus.assign(static_cast<std::size_t>(max_depth), std::numeric_limits<double>::infinity());
  struct Node {
    Moebius h;
    std::vector<int> address;
    double modulus;
  };
  std::vector<Node> level{{Moebius::identity(), {}, 0.0}};
  for (int n = 1; n <= max_depth; ++n) {
    std::vector<Node> next;
    next.reserve(level.size() * gens.size());
    for (const Node& node : level) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Node child{node.h * gens[i], node.address, 0.0};
        child.address.push_back(static_cast<int>(i) + 1);
        child.modulus = annulus_modulus(R, circle_image(child.h, 0.0, R));
        // m(B \ h_I B) >= m(B \ h_I' B) + m(h_I' B \ h_I B), the last ring
        // being conformally B \ h_i B.
        const double bound = node.modulus + single[i];
        if (n > 1 && child.modulus < bound - 1e-8) res.violations.push_back({child.address, child.modulus, bound});
        auto& slot = res.min_modulus[static_cast<std::size_t>(n - 1)];
        slot = std::min(slot, child.modulus);
        res.c_estimate = std::min(res.c_estimate, child.modulus / n);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return res;
}

DiscMap RenormalizationStep::map() const {
  std::vector<cplx> c = deviation;
  if (c.size() < 2) c.resize(2, 0.0);
  c[1] += 1.0;
  return DiscMap::polynomial(std::move(c), 1.0 / 3.0);
}

namespace {

std::vector<cplx> evaluation_points(double radius, int grid, bool rim = true) {
  std::vector<cplx> pts;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = grid == 1 ? 0.0 : -radius + 2.0 * radius * i / (grid - 1);
      const double y = grid == 1 ? 0.0 : -radius + 2.0 * radius * j / (grid - 1);
      if (std::hypot(x, y) <= radius * (1.0 + 1e-12)) pts.emplace_back(x, y);
    }
  }
  if (rim) {
    const std::vector<cplx> edge = circle_samples(radius);
    pts.insert(pts.end(), edge.begin(), edge.end());
  }
  return pts;
}

struct Fit {
  std::vector<cplx> coeffs;
  double residual;
};

// Least squares in the scaled monomials (z / radius)^j, returned in powers of z.
Fit refit(const std::vector<cplx>& pts, const std::vector<cplx>& values, double radius, int degree) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd A(n, degree + 1);
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx u = pts[static_cast<std::size_t>(i)] / radius;
    cplx p = 1.0;
    for (int j = 0; j <= degree; ++j, p *= u) A(i, j) = p;
    b(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
  Fit fit;
  for (int j = 0; j <= degree; ++j) fit.coeffs.push_back(x(j) / std::pow(radius, j));
  double err = 0.0, size = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    err = std::max(err, std::abs(horner(fit.coeffs, pts[i]) - values[i]));
    size = std::max(size, std::abs(values[i]));
  }
  fit.residual = size == 0.0 ? 0.0 : err / size;
  return fit;
}

}  // namespace

RenormalizationResult loray_rebelo_renormalize(cplx lambda, const DiscMap& g, std::optional<int> N, int iterations,
                                               const RenormalizationOptions& opt) {
  const double mod = std::abs(lambda);
  if (!(mod < 1.0) || mod == 0.0) throw NumericError(ErrorKind::InvalidArgument, "need 0 < |lambda| < 1");
  if (iterations < 0) throw NumericError(ErrorKind::InvalidArgument, "iterations must be >= 0");
  if (g.domain_radius() < 1.0 / 3.0) throw NumericError(ErrorKind::InvalidArgument, "g must be defined on the 1/3-disc");
  if (N && *N < 1) throw NumericError(ErrorKind::InvalidArgument, "N must be >= 1");

  constexpr double kRadius = 1.0 / 3.0;
  const std::vector<cplx> pts = evaluation_points(kRadius, opt.grid);
  RenormalizationResult res;
  res.affine_degenerate = g.is_affine();
  res.lambda_distance = std::abs(lambda - 1.0);

  // g_0 - id, exactly for polynomial and affine kinds.
  std::vector<cplx> values(pts.size());
  if (g.kind() != DiscMap::Kind::moebius) {
    std::vector<cplx> dev = g.coefficients();
    dev.resize(std::max<std::size_t>(dev.size(), 2), 0.0);
    dev[1] -= 1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) values[i] = horner(dev, pts[i]);
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i) values[i] = g(pts[i]) - pts[i];
  }
  double sup0 = 0.0;
  for (const cplx& v : values) sup0 = std::max(sup0, std::abs(v));

  if (N) {
    res.N = *N;
  } else {
    res.N = 1;
    while (std::pow(mod, res.N - 1) / 3.0 + 2.0 * sup0 / mod >= kRadius) {
      if (++res.N > 10000) throw NumericError(ErrorKind::DomainEscape, "no N keeps the commutator in the 1/3-disc");
    }
  }

  // Lowest degree that reproduces the data: unused high-degree coefficients
  // would only carry fitting noise, which renormalization damps far more
  // slowly than the low-order terms.
  auto push_step = [&](const std::vector<cplx>& vals) {
    Fit fit = refit(pts, vals, kRadius, 1);
    for (int d = 2; d <= opt.max_degree && fit.residual > 1e-12; ++d) fit = refit(pts, vals, kRadius, d);
    if (fit.residual > opt.max_residual) {
      throw NumericError(ErrorKind::DegreeOverflow, "refit residual " + std::to_string(fit.residual) + " at degree cap");
    }
    RenormalizationStep step{std::move(fit.coeffs), 0.0, fit.residual};
    for (const cplx& z : pts) step.sup_distance = std::max(step.sup_distance, std::abs(horner(step.deviation, z)));
    res.steps.push_back(std::move(step));
  };
  push_step(values);

  const cplx lamN = std::pow(lambda, res.N);
  for (int k = 0; k < iterations; ++k) {
    const std::vector<cplx>& h = res.steps.back().deviation;
    const double limit = kRadius * (1.0 + 1e-12);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      // [f, g](x) - x = lambda h(w / lambda) - h(w) with w = g^-1(x), so the
      // deviation never passes through a difference of O(1) numbers.
      const cplx x = lamN * pts[i];
      cplx w = x - horner(h, x);
      for (int it = 0; it < 50; ++it) {
        const cplx step = (w + horner(h, w) - x) / (1.0 + horner_derivative(h, w));
        w -= step;
        if (std::abs(step) <= 1e-17 * std::abs(x) || step == cplx(0.0)) break;
      }
      if (std::abs(w) > limit || std::abs(w / lambda) > limit) {
        throw NumericError(ErrorKind::DomainEscape, "iterate " + std::to_string(k + 1) + " leaves the 1/3-disc");
      }
      values[i] = (lambda * horner(h, w / lambda) - horner(h, w)) / lamN;
    }
    push_step(values);
  }
  return res;
}

DenseLimitResult dense_limit_construction(cplx lambda, int k, const std::vector<DiscMap>& g_list, double r,
                                          const DenseLimitOptions& opt) {
  const double mod = std::abs(lambda);
  if (!(mod < 1.0) || mod == 0.0) throw NumericError(ErrorKind::InvalidArgument, "need 0 < |lambda| < 1");
  if (std::abs(lambda.imag()) <= 1e-12 * mod) throw NumericError(ErrorKind::InvalidArgument, "lambda must not be real");
  if (!(r > 0.0 && r < 0.125)) throw NumericError(ErrorKind::InvalidArgument, "need 0 < r < 1/8");
  if (k < 1) throw NumericError(ErrorKind::InvalidArgument, "k must be >= 1");
  if (g_list.empty()) throw NumericError(ErrorKind::InvalidArgument, "g_list is empty");
  if (opt.grid < 1 || opt.inverse_steps < 0) throw NumericError(ErrorKind::InvalidArgument, "bad coverage grid");
  for (const DiscMap& g : g_list) {
    if (g.kind() == DiscMap::Kind::polynomial && !g.is_affine())
      throw NumericError(ErrorKind::InvalidArgument, "g_i must be Moebius or affine");
    if (g.domain_radius() < 0.125 || !g.injective())
      throw NumericError(ErrorKind::InvalidArgument, "g_i must be injective on the 1/8-disc");
  }

  DenseLimitResult res;
  const cplx lamk = std::pow(lambda, k);
  const double rho = std::abs(lamk) * r;
  for (const DiscMap& g : g_list) {
    const Moebius inv = g.to_moebius().inverse();
    for (const cplx& w : evaluation_points(0.25, 41)) {
      const cplx den = inv.c() * w + inv.d();
      res.M = std::max(res.M, den == cplx(0.0) ? std::numeric_limits<double>::infinity() : 1.0 / std::norm(den));
    }
    res.h_list.push_back(DiscMap::moebius(inv * Moebius::homothety(lamk), 1.0));
  }
  res.contraction = 2.0 * res.M * std::abs(lamk);
  if (!(res.contraction < 1.0)) {
    throw NumericError(ErrorKind::ContractionFailure, "2 M |lambda|^k = " + std::to_string(res.contraction));
  }

  for (const cplx& start : evaluation_points(r, opt.grid, false)) {
    CoverageEntry entry{start, {}, std::abs(start)};
    cplx p = start;
    for (int n = 0; n < opt.inverse_steps; ++n) {
      std::size_t best = 0;
      double best_mod = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < g_list.size(); ++i) {
        const double m = std::abs(g_list[i](p));
        if (m < best_mod) best_mod = m, best = i;
      }
      if (!(best_mod < rho)) {
        throw NumericError(ErrorKind::CoverageGap, "no admissible index at step " + std::to_string(n + 1) +
                                                       " from p = " + std::to_string(start.real()) + "," +
                                                       std::to_string(start.imag()));
      }
      p = g_list[best](p) / lamk;
      entry.chain.push_back(static_cast<int>(best) + 1);
      entry.max_modulus = std::max(entry.max_modulus, std::abs(p));
    }
    res.coverage.push_back(std::move(entry));
  }
  return res;
}

std::vector<DiscMap> lattice_translations(double r, double rho, double margin) {
  if (!(r > 0.0 && rho > 0.0 && margin > 0.0 && margin <= 1.0))
    throw NumericError(ErrorKind::InvalidArgument, "lattice parameters must be positive");
  // A hexagonal lattice of spacing a has covering radius a / sqrt(3).
  const double a = margin * std::sqrt(3.0) * rho;
  const cplx e1(a, 0.0), e2(a / 2.0, a * std::sqrt(3.0) / 2.0);
  const int span = static_cast<int>(std::ceil((r + rho) / (a * std::sqrt(3.0) / 2.0))) + 1;
  std::vector<DiscMap> out;
  for (int i = -2 * span; i <= 2 * span; ++i) {
    for (int j = -span; j <= span; ++j) {
      const cplx c = static_cast<double>(i) * e1 + static_cast<double>(j) * e2;
      if (std::abs(c) <= r + rho) out.push_back(DiscMap::affine(1.0, -c, 0.125));
    }
  }
  return out;
}

}  // namespace rhol
