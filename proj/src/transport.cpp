#include "rhol/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rhol/error.hpp"

namespace rhol {

namespace {

double segment_distance(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

void add_pole(std::vector<cplx>& poles, cplx p) {
  for (cplx q : poles) {
    if (std::abs(q - p) <= 1e-8) return;
  }
  poles.push_back(p);
}

}  // namespace

RiccatiSystem::RiccatiSystem(RationalMap alpha0, RationalMap alpha1, RationalMap alpha2)
    : a0_(std::move(alpha0)), a1_(std::move(alpha1)), a2_(std::move(alpha2)) {
  for (const RationalMap* m : {&a0_, &a1_, &a2_}) {
    for (const Pole& p : m->poles()) add_pole(poles_, p.location);
  }
}

std::array<cplx, 3> RiccatiSystem::eval(cplx t) const { return {a0_(t), a1_(t), a2_(t)}; }

double RiccatiSystem::pole_distance(cplx t) const {
  double best = std::numeric_limits<double>::infinity();
  for (cplx p : poles_) best = std::min(best, std::abs(t - p));
  return best;
}

double BasePath::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) len += std::abs(vertices[i] - vertices[i - 1]);
  return len;
}

BasePath BasePath::reversed() const {
  BasePath out = *this;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

BasePath BasePath::then(const BasePath& next) const {
  if (vertices.empty()) return next;
  if (next.vertices.empty()) return *this;
  if (std::abs(end() - next.start()) > 1e-12) {
    throw NumericError(ErrorKind::InvalidArgument, "paths do not meet");
  }
  BasePath out = *this;
  out.vertices.insert(out.vertices.end(), next.vertices.begin() + 1, next.vertices.end());
  out.refinement = std::min(refinement, next.refinement);
  return out;
}

std::vector<cplx> BasePath::refined() const {
  if (vertices.empty()) return {};
  std::vector<cplx> out{vertices.front()};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const cplx a = vertices[i - 1], b = vertices[i];
    const double len = std::abs(b - a);
    const int pieces = std::isfinite(refinement) && refinement > 0.0
                           ? std::max(1, static_cast<int>(std::ceil(len / refinement)))
                           : 1;
    for (int k = 1; k < pieces; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
    out.push_back(b);
  }
  return out;
}

BasePath segment(cplx a, cplx b) { return BasePath{{a, b}}; }

Mat2 to_mat(const Moebius& m) { return {m.a(), m.b(), m.c(), m.d()}; }

Moebius from_mat(const Mat2& m) { return Moebius(m[0], m[1], m[2], m[3]); }

void check_path_margin(const RiccatiSystem& sys, const BasePath& path, double margin) {
  if (path.vertices.empty()) throw NumericError(ErrorKind::InvalidArgument, "empty path");
  for (cplx p : sys.poles()) {
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      const cplx a = path.vertices[i];
      const cplx b = i + 1 < path.vertices.size() ? path.vertices[i + 1] : a;
      if (segment_distance(a, b, p) < margin) {
        throw NumericError(ErrorKind::PoleTooClose, "path passes within pole_margin of a pole");
      }
    }
  }
}

Frame transport(const RiccatiSystem& sys, const BasePath& path, const std::optional<Frame>& start,
                const TransportOptions& opt) {
  check_path_margin(sys, path, opt.pole_margin);
  Frame frame = start.value_or(Frame{Moebius::identity(), path.start(), 0.0});
  frame.endpoint = path.start();
  Mat2 h = to_mat(frame.H);
  const std::vector<cplx> pts = path.refined();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const cplx a = pts[i - 1];
    const double len = std::abs(pts[i] - a);
    if (len == 0.0) continue;
    const cplx dir = (pts[i] - a) / len;
    auto rhs = [&](double u, const Mat2& m) {
      const auto [al0, al1, al2] = sys.eval(a + u * dir);
      const cplx p = 0.5 * al1 * dir, q = al0 * dir, r = -al2 * dir;
      return Mat2{p * m[0] + q * m[2], p * m[1] + q * m[3], r * m[0] - p * m[2],
                  r * m[1] - p * m[3]};
    };
    auto renorm = [&](double, Mat2& m, double) {
      const cplx det = m[0] * m[3] - m[1] * m[2];
      frame.accumulated_error += std::abs(det - 1.0);
      const cplx s = std::sqrt(det);
      for (cplx& e : m) e /= s;
      return true;
    };
    const OdeResult<4> res = dopri5<4>(rhs, 0.0, len, h, opt.ode(), renorm);
    if (res.status == OdeStatus::step_collapse) {
      throw NumericError(ErrorKind::StepCollapse, "adaptive step fell below min_step");
    }
    if (res.status == OdeStatus::budget_exceeded) {
      throw NumericError(ErrorKind::StepCollapse, "step budget exhausted during transport");
    }
    h = res.y;
  }
  frame.H = from_mat(h);
  frame.endpoint = path.end();
  return frame;
}

Moebius holonomy(const RiccatiSystem& sys, const BasePath& path, const TransportOptions& opt) {
  return transport(sys, path, std::nullopt, opt).H;
}

std::vector<Moebius> monodromy_representation(const RiccatiSystem& sys, cplx basepoint,
                                              const std::vector<BasePath>& loops,
                                              const TransportOptions& opt) {
  std::vector<Moebius> out;
  out.reserve(loops.size());
  for (const BasePath& loop : loops) {
    if (loop.vertices.empty() || std::abs(loop.start() - basepoint) > 1e-12 ||
        std::abs(loop.end() - basepoint) > 1e-12) {
      throw NumericError(ErrorKind::LoopNotClosed, "loop does not start and end at the basepoint");
    }
    out.push_back(holonomy(sys, loop, opt));
  }
  return out;
}

BasePath circle_loop(cplx center, double radius, double start_angle, int vertices,
                     bool counterclockwise) {
  if (vertices < 3) throw NumericError(ErrorKind::InvalidArgument, "circle needs >= 3 vertices");
  BasePath out;
  const double sgn = counterclockwise ? 1.0 : -1.0;
  const cplx first = center + std::polar(radius, start_angle);
  out.vertices.push_back(first);
  for (int k = 1; k < vertices; ++k) {
    out.vertices.push_back(center +
                           std::polar(radius, start_angle + sgn * 2.0 * std::numbers::pi * k / vertices));
  }
  out.vertices.push_back(first);
  return out;
}

namespace {

// Straight connector a -> b, with detours around poles it passes close to.
std::vector<cplx> connector(cplx a, cplx b, const std::vector<cplx>& avoid, double margin) {
  std::vector<cplx> out{a};
  const double len = std::abs(b - a);
  if (len == 0.0) return out;
  const cplx dir = (b - a) / len;
  const cplx perp = dir * cplx(0.0, 1.0);
  const double off = 2.0 * margin;
  std::vector<std::pair<double, cplx>> hits;
  for (cplx p : avoid) {
    if (segment_distance(a, b, p) < off) {
      const double s = ((p - a) * std::conj(dir)).real();
      hits.emplace_back(s, p);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (const auto& [s, p] : hits) {
    const cplx foot = a + s * dir;
    // Pass on the side opposite to the pole, at least `off` away from it.
    const double side = ((p - foot) * std::conj(perp)).real() > 0.0 ? -1.0 : 1.0;
    const cplx shift = perp * (side * off) + (p - foot);
    out.push_back(foot - off * dir);
    out.push_back(foot - off * dir + shift);
    out.push_back(foot + off * dir + shift);
    out.push_back(foot + off * dir);
  }
  out.push_back(b);
  return out;
}

}  // namespace

BasePath peripheral_loop(cplx basepoint, cplx puncture, const std::vector<cplx>& poles,
                         double radius, double pole_margin, int vertices) {
  const cplx rel = basepoint - puncture;
  if (std::abs(rel) <= radius) {
    throw NumericError(ErrorKind::InvalidArgument, "basepoint lies inside the peripheral circle");
  }
  const double angle = std::arg(rel);
  const cplx entry = puncture + std::polar(radius, angle);
  std::vector<cplx> others;
  for (cplx p : poles) {
    if (std::abs(p - puncture) > 1e-8) others.push_back(p);
  }
  const std::vector<cplx> conn = connector(basepoint, entry, others, pole_margin);
  BasePath out{conn};
  const BasePath circle = circle_loop(puncture, radius, angle, vertices, true);
  out.vertices.insert(out.vertices.end(), circle.vertices.begin() + 1, circle.vertices.end());
  out.vertices.insert(out.vertices.end(), conn.rbegin() + 1, conn.rend());
  return out;
}

double swept_angle(const BasePath& path, cplx p) {
  double total = 0.0;
  const std::vector<cplx>& v = path.vertices;
  for (std::size_t i = 1; i < v.size(); ++i) total += std::arg((v[i] - p) / (v[i - 1] - p));
  return total;
}

int winding_number(const BasePath& closed, cplx p) {
  return static_cast<int>(std::lround(swept_angle(closed, p) / (2.0 * std::numbers::pi)));
}

bool homotopic_by_winding(const BasePath& p, const BasePath& q, const std::vector<cplx>& poles) {
  const BasePath loop = p.then(q.reversed());
  return std::all_of(poles.begin(), poles.end(),
                     [&](cplx z) { return std::abs(swept_angle(loop, z)) < std::numbers::pi; });
}

}  // namespace rhol
