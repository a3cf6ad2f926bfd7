#include "rhol/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhol/error.hpp"

namespace rhol {

namespace {

constexpr double kCancelTol = 1e-8;
constexpr double kRootClusterTol = 1e-6;
constexpr double kPoleMergeTol = 1e-10;

// Taylor coefficients of p around x0, up to (and including) `order`.
std::vector<cplx> taylor(const Polynomial& p, cplx x0, int order) {
  std::vector<cplx> out;
  Polynomial cur = p;
  for (int k = 0; k <= order; ++k) {
    out.push_back(cur.is_zero() ? cplx(0.0) : cur(x0));
    if (cur.degree() <= 0) {
      cur = Polynomial{};
    } else {
      cur = cur.deflate(x0);
    }
  }
  return out;
}

Polynomial pole_product(const std::vector<Pole>& poles) {
  Polynomial out = Polynomial::constant(1.0);
  for (const Pole& p : poles) {
    for (int k = 0; k < p.order; ++k) out = out * Polynomial({-p.location, 1.0});
  }
  return out;
}

std::vector<Pole> merge_poles(std::vector<Pole> a, const std::vector<Pole>& b, bool add_orders) {
  for (const Pole& q : b) {
    auto it = std::find_if(a.begin(), a.end(), [&](const Pole& p) {
      return std::abs(p.location - q.location) <= kPoleMergeTol;
    });
    if (it == a.end()) {
      a.push_back(q);
    } else if (add_orders) {
      it->order += q.order;
    } else {
      it->order = std::max(it->order, q.order);
    }
  }
  return a;
}

int order_in(const std::vector<Pole>& poles, cplx loc) {
  for (const Pole& p : poles) {
    if (std::abs(p.location - loc) <= kPoleMergeTol) return p.order;
  }
  return 0;
}

// Newton on the (m-1)-th derivative pins an m-fold root to full precision;
// the cluster mean alone is only good to about eps^(1/m).
std::vector<Pole> factor_poles(const Polynomial& p) {
  std::vector<Pole> poles = cluster_roots(p.roots(), kRootClusterTol);
  for (Pole& q : poles) {
    Polynomial d = p;
    for (int k = 1; k < q.order; ++k) d = d.derivative();
    const Polynomial dd = d.derivative();
    for (int it = 0; it < 4; ++it) {
      const cplx slope = dd(q.location);
      if (slope == cplx(0.0)) break;
      const cplx step = d(q.location) / slope;
      if (!(std::abs(step) < kRootClusterTol)) break;
      q.location -= step;
    }
  }
  return poles;
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int degree, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, cplx(0.0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots) {
  Polynomial out = constant(1.0);
  for (cplx r : roots) out = out * Polynomial({-r, 1.0});
  return out;
}

void Polynomial::trim() {
  double scale = 0.0;
  for (cplx c : coeffs_) scale = std::max(scale, std::abs(c));
  while (!coeffs_.empty() &&
         (coeffs_.back() == cplx(0.0) || std::abs(coeffs_.back()) <= 1e-15 * scale)) {
    coeffs_.pop_back();
  }
  if (degree() > kMaxDegree) {
    throw NumericError(ErrorKind::DegreeOverflow, "polynomial degree exceeds cap of 64");
  }
}

cplx Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::magnitude_at(cplx x) const {
  const double r = std::abs(x);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() <= 0) return {};
  std::vector<cplx> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<cplx> v(coeffs_.size() + 1, cplx(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::deflate(cplx r) const {
  if (degree() <= 0) return {};
  std::vector<cplx> q(coeffs_.size() - 1);
  cplx acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = acc;
    acc = acc * r + coeffs_[static_cast<std::size_t>(k)];
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::reversed() const {
  return Polynomial(std::vector<cplx>(coeffs_.rbegin(), coeffs_.rend()));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  // Exact zero roots first; they slow Aberth down needlessly.
  std::size_t zeros = 0;
  while (coeffs_[zeros] == cplx(0.0)) ++zeros;
  std::vector<cplx> out(zeros, cplx(0.0));
  const Polynomial p(std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs_.end()));
  const int m = p.degree();
  if (m == 0) return out;
  if (m == 1) {
    out.push_back(-p.coeffs_[0] / p.coeffs_[1]);
    return out;
  }
  const Polynomial dp = p.derivative();
  double radius = 0.0;
  for (int k = 0; k < m; ++k) {
    radius = std::max(radius, std::pow(std::abs(p.coeffs_[static_cast<std::size_t>(k)] / p.leading()),
                                       1.0 / (m - k)));
  }
  std::vector<cplx> z(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / m + 0.4);
  }
  for (int iter = 0; iter < 800; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
      const cplx zk = z[static_cast<std::size_t>(k)];
      const cplx pv = p(zk);
      if (pv == cplx(0.0)) continue;
      const cplx ratio = pv / dp(zk);
      cplx sum = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j != k) sum += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      }
      const cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(std::abs(step))) continue;
      z[static_cast<std::size_t>(k)] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(zk)));
    }
    if (worst < 1e-16) break;
  }
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), cplx(0.0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), cplx(0.0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.degree() + b.degree() > kMaxDegree) {
    throw NumericError(ErrorKind::DegreeOverflow, "polynomial product exceeds degree cap of 64");
  }
  std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

std::vector<Pole> cluster_roots(const std::vector<cplx>& roots, double tol) {
  std::vector<std::vector<cplx>> groups;
  for (cplx r : roots) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const std::vector<cplx>& g) {
      return std::abs(g.front() - r) <= tol;
    });
    if (it == groups.end()) {
      groups.push_back({r});
    } else {
      it->push_back(r);
    }
  }
  std::vector<Pole> out;
  for (const auto& g : groups) {
    cplx mean = 0.0;
    for (cplx r : g) mean += r;
    mean /= static_cast<double>(g.size());
    // Snap tiny real/imaginary parts produced by the iteration.
    if (std::abs(mean.real()) < 1e-14) mean.real(0.0);
    if (std::abs(mean.imag()) < 1e-14) mean.imag(0.0);
    out.push_back({mean, static_cast<int>(g.size())});
  }
  return out;
}

RationalMap::RationalMap(const Polynomial& p) : num_(p) {}

RationalMap::RationalMap(const Polynomial& num, const Polynomial& den) : num_(num) {
  if (den.is_zero()) throw NumericError(ErrorKind::InvalidArgument, "zero denominator");
  lead_ = den.leading();
  poles_ = factor_poles(den);
  reduce();
}

RationalMap::RationalMap(const Polynomial& num, cplx den_lead, std::vector<Pole> poles)
    : num_(num), lead_(den_lead), poles_(std::move(poles)) {
  if (den_lead == cplx(0.0)) throw NumericError(ErrorKind::InvalidArgument, "zero denominator");
  reduce();
}

void RationalMap::reduce() {
  if (num_.is_zero()) {
    poles_.clear();
    lead_ = 1.0;
    return;
  }
  for (Pole& p : poles_) {
    while (p.order > 0 && num_.degree() >= 1 &&
           std::abs(num_(p.location)) <= kCancelTol * num_.magnitude_at(p.location)) {
      num_ = num_.deflate(p.location);
      --p.order;
    }
  }
  std::erase_if(poles_, [](const Pole& p) { return p.order <= 0; });
}

Polynomial RationalMap::denominator() const { return pole_product(poles_) * lead_; }

cplx RationalMap::den_value(cplx x) const {
  cplx acc = lead_;
  for (const Pole& p : poles_) {
    const cplx f = x - p.location;
    if (f == cplx(0.0)) return 0.0;
    for (int k = 0; k < p.order; ++k) acc *= f;
  }
  return acc;
}

cplx RationalMap::operator()(cplx x) const {
  const cplx den = den_value(x);
  if (den == cplx(0.0)) throw NumericError(ErrorKind::PoleEvaluation, "evaluation at a pole");
  const cplx v = num_(x) / den;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericError(ErrorKind::PoleEvaluation, "evaluation overflow near a pole");
  }
  return v;
}

SpherePoint RationalMap::eval_sphere(cplx x) const {
  const cplx den = den_value(x);
  if (den == cplx(0.0)) return SpherePoint::infinity();
  const cplx v = num_(x) / den;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
  return SpherePoint(v);
}

int RationalMap::pole_order_at(cplx x, double tol) const {
  for (const Pole& p : poles_) {
    if (std::abs(p.location - x) <= tol) return p.order;
  }
  return 0;
}

cplx RationalMap::laurent_coefficient(cplx x, int k, double tol) const {
  const Pole* pole = nullptr;
  for (const Pole& p : poles_) {
    if (std::abs(p.location - x) <= tol) pole = &p;
  }
  const int m = pole ? pole->order : 0;
  if (k > m) return 0.0;
  const cplx p0 = pole ? pole->location : x;
  // g = (x - p)^m f = num / (lead * rest); need its Taylor coefficient m - k.
  const int need = m - k;
  std::vector<Pole> rest;
  for (const Pole& q : poles_) {
    if (&q != pole) rest.push_back(q);
  }
  const std::vector<cplx> tn = taylor(num_, p0, need);
  const std::vector<cplx> td = taylor(pole_product(rest) * lead_, p0, need);
  // Series division tn / td.
  std::vector<cplx> g(static_cast<std::size_t>(need) + 1, cplx(0.0));
  for (int i = 0; i <= need; ++i) {
    cplx acc = tn[static_cast<std::size_t>(i)];
    for (int j = 1; j <= i; ++j) acc -= td[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(i - j)];
    g[static_cast<std::size_t>(i)] = acc / td[0];
  }
  return g[static_cast<std::size_t>(need)];
}

RationalMap RationalMap::derivative() const {
  if (poles_.empty()) return RationalMap(num_.derivative());
  const Polynomial p = pole_product(poles_);
  Polynomial num = num_.derivative() * p - num_ * p.derivative();
  std::vector<Pole> doubled = poles_;
  for (Pole& q : doubled) q.order *= 2;
  return RationalMap(num, lead_, std::move(doubled));
}

RationalMap RationalMap::compose_reciprocal() const {
  if (num_.is_zero()) return *this;
  const int n = num_.degree();
  int total = 0;
  cplx lead = lead_;
  std::vector<Pole> poles;
  for (const Pole& p : poles_) {
    total += p.order;
    if (p.location == cplx(0.0)) continue;
    // (1 - p s) = -p (s - 1/p)
    for (int k = 0; k < p.order; ++k) lead *= -p.location;
    poles.push_back({1.0 / p.location, p.order});
  }
  // s^n num(1/s)
  Polynomial num = num_.reversed();
  const int shift = total - n;
  if (shift >= 0) {
    num = num * Polynomial::monomial(shift);
  } else {
    poles = merge_poles(std::move(poles), {Pole{0.0, -shift}}, true);
  }
  return RationalMap(num, lead, std::move(poles));
}

RationalMap operator+(const RationalMap& a, const RationalMap& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::vector<Pole> common = merge_poles(a.poles_, b.poles_, false);
  std::vector<Pole> fa, fb;
  for (const Pole& p : common) {
    const int ma = p.order - order_in(a.poles_, p.location);
    const int mb = p.order - order_in(b.poles_, p.location);
    if (ma > 0) fa.push_back({p.location, ma});
    if (mb > 0) fb.push_back({p.location, mb});
  }
  Polynomial num = a.num_ * pole_product(fa) * (1.0 / a.lead_) + b.num_ * pole_product(fb) * (1.0 / b.lead_);
  return RationalMap(num, 1.0, common);
}

RationalMap RationalMap::operator-() const {
  RationalMap out = *this;
  out.num_ *= -1.0;
  return out;
}

RationalMap operator-(const RationalMap& a, const RationalMap& b) { return a + (-b); }

RationalMap operator*(const RationalMap& a, const RationalMap& b) {
  if (a.is_zero() || b.is_zero()) return RationalMap{};
  return RationalMap(a.num_ * b.num_, a.lead_ * b.lead_, merge_poles(a.poles_, b.poles_, true));
}

RationalMap operator/(const RationalMap& a, const RationalMap& b) {
  if (b.is_zero()) throw NumericError(ErrorKind::InvalidArgument, "division by zero rational map");
  if (a.is_zero()) return RationalMap{};
  const std::vector<Pole> zeros_b = factor_poles(b.num_);
  Polynomial num = a.num_ * pole_product(b.poles_) * b.lead_;
  return RationalMap(num, a.lead_ * b.num_.leading(), merge_poles(a.poles_, zeros_b, true));
}

}  // namespace rhol
