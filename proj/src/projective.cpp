#include "rhol/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "rhol/error.hpp"

namespace rhol {

RiccatiSystem companion_system(const RationalMap& q) {
  return RiccatiSystem(RationalMap(1.0), RationalMap(), q * RationalMap(0.5));
}

ProjectiveStructure from_quadratic(const QuadDifferential& qd, cplx basepoint,
                                   const TransportOptions& opt) {
  for (cplx p : qd.punctures) {
    if (std::abs(p - basepoint) < opt.pole_margin) {
      throw NumericError(ErrorKind::PoleTooClose, "basepoint is within pole_margin of a puncture");
    }
  }
  RiccatiSystem sys = companion_system(qd.q);
  if (sys.pole_distance(basepoint) < opt.pole_margin) {
    throw NumericError(ErrorKind::PoleTooClose, "basepoint is within pole_margin of a pole of q");
  }
  return ProjectiveStructure{qd, basepoint, std::move(sys), Frame{Moebius::identity(), basepoint, 0.0}, opt};
}

Development develop_frame(const RiccatiSystem& sys, const Frame& frame) {
  const cplx a = frame.H.a(), b = frame.H.b();
  const cplx a0 = sys.alpha0()(frame.endpoint);
  Development out;
  out.frame = frame;
  if (std::abs(a) < 1e-12) {
    // phi = -b/a passes through infinity; use 1/phi = -a/b, whose derivative
    // is alpha0/b^2 (det H = 1).
    out.value = SpherePoint::infinity();
    out.derivative = a0 / (b * b);
    out.in_reciprocal_chart = true;
    return out;
  }
  out.value = SpherePoint(-b / a);
  out.derivative = -a0 / (a * a);
  return out;
}

Development developing_value(const ProjectiveStructure& ps, const BasePath& path) {
  if (path.vertices.empty() || std::abs(path.start() - ps.basepoint) > 1e-12) {
    throw NumericError(ErrorKind::InvalidArgument, "developing path must start at the basepoint");
  }
  const Frame f = transport(ps.companion, path, ps.base_frame, ps.opt);
  return develop_frame(ps.companion, f);
}

std::vector<TraceSample> trace_map_scan(const std::vector<cplx>& lambdas, const BasePath& loop,
                                        const TransportOptions& opt, double real_tol) {
  if (loop.vertices.empty() || std::abs(loop.start() - loop.end()) > 1e-12) {
    throw NumericError(ErrorKind::LoopNotClosed, "trace scan needs a closed loop");
  }
  std::vector<TraceSample> out;
  for (cplx lambda : lambdas) {
    TraceSample s;
    s.lambda = lambda;
    s.trace_squared = trace_squared(holonomy(explicit_riccati(lambda), loop, opt));
    s.real = std::abs(s.trace_squared.imag()) <= real_tol;
    s.elliptic_range = s.real && s.trace_squared.real() >= 0.0 && s.trace_squared.real() < 4.0;
    out.push_back(s);
  }
  return out;
}

std::vector<BasePath> standard_peripheral_loops(cplx basepoint, double radius, double pole_margin,
                                                int vertices) {
  const std::vector<cplx> roots = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
  std::vector<BasePath> loops;
  for (cplx p : roots) loops.push_back(peripheral_loop(basepoint, p, roots, radius, pole_margin, vertices));
  return loops;
}

FuchsianGroup ideal_polygon_group(const std::vector<cplx>& vertices, const OrthocircleOptions& opts) {
  const std::size_t n = vertices.size();
  if (n < 3) throw NumericError(ErrorKind::DegenerateVertices, "need at least 3 vertices");
  for (cplx v : vertices) {
    if (std::abs(std::abs(v) - 1.0) > 1e-8) {
      throw NumericError(ErrorKind::InvalidArgument, "vertices must lie on the unit circle");
    }
  }
  // Counterclockwise gaps must add up to exactly one turn.
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx u = vertices[i], v = vertices[(i + 1) % n];
    if (std::abs(u - v) <= opts.tol) throw NumericError(ErrorKind::DegenerateVertices, "coincident vertices");
    double gap = std::arg(v / u);
    if (gap < 0.0) gap += 2.0 * std::numbers::pi;
    turn += gap;
  }
  if (std::abs(turn - 2.0 * std::numbers::pi) > 1e-9) {
    throw NumericError(ErrorKind::DegenerateVertices, "vertices are not in cyclic order");
  }
  FuchsianGroup g;
  g.vertices = vertices;
  for (std::size_t i = 0; i < n; ++i) g.side_circles.push_back(orthocircle(vertices[i], vertices[(i + 1) % n], opts));
  // Three interior sample points with distinct images determine r_i o r_{i+1}.
  const SpherePoint z1(cplx(0.0, 0.0)), z2(cplx(0.31, 0.17)), z3(cplx(-0.23, 0.41));
  for (std::size_t i = 0; i < n; ++i) {
    const Circle& ci = g.side_circles[i];
    const Circle& cj = g.side_circles[(i + 1) % n];
    auto rho = [&](const SpherePoint& z) { return reflect(ci, reflect(cj, z)); };
    g.generators.push_back(Moebius::from_three_points(z1, z2, z3, rho(z1), rho(z2), rho(z3)));
  }
  return g;
}

void for_each_orbit_point(const std::vector<Moebius>& gens, int depth, const SpherePoint& seed,
                          const std::function<void(const SpherePoint&, int)>& visit) {
  visit(seed, 0);
  if (depth <= 0 || gens.empty()) return;
  const int n = static_cast<int>(gens.size());
  std::vector<Moebius> letters;
  for (const Moebius& m : gens) letters.push_back(m);
  for (const Moebius& m : gens) letters.push_back(m.inverse());
  // Letter k and k +- n are mutually inverse.
  auto inverse_of = [n](int k) { return k < n ? k + n : k - n; };
  struct Node {
    SpherePoint point;
    int last;
    int next;
  };
  std::vector<Node> stack;
  stack.push_back({seed, -1, 0});
  while (!stack.empty()) {
    Node& top = stack.back();
    if (top.next >= 2 * n || static_cast<int>(stack.size()) > depth) {
      stack.pop_back();
      continue;
    }
    const int k = top.next++;
    if (top.last >= 0 && k == inverse_of(top.last)) continue;
    // Words act on the left: the new letter is applied last.
    const SpherePoint p = letters[static_cast<std::size_t>(k)].apply(top.point);
    const int len = static_cast<int>(stack.size());
    visit(p, len);
    stack.push_back({p, k, 0});
  }
}

std::vector<OrbitPoint> limit_set_orbit(const std::vector<Moebius>& gens, int depth, const SpherePoint& seed) {
  // Grid keys at 1e-10 resolution; infinity gets its own key.
  std::map<std::pair<long long, long long>, std::size_t> seen;
  bool have_inf = false;
  std::vector<OrbitPoint> out;
  for_each_orbit_point(gens, depth, seed, [&](const SpherePoint& p, int len) {
    if (p.is_finite() && std::abs(p.value()) > 1e8) {
      out.push_back({p, len});
      return;
    }
    if (p.is_infinity()) {
      if (!have_inf) out.push_back({p, len});
      have_inf = true;
      return;
    }
    const auto key = std::make_pair(std::llround(p.value().real() * 1e10), std::llround(p.value().imag() * 1e10));
    const auto [it, inserted] = seen.try_emplace(key, out.size());
    if (inserted) {
      out.push_back({p, len});
    } else if (len < out[it->second].word_length) {
      out[it->second].word_length = len;
    }
  });
  return out;
}

std::vector<OrbitPoint> limit_set_orbit(const FuchsianGroup& g, int depth, const SpherePoint& seed) {
  return limit_set_orbit(g.generators, depth, seed);
}

JorgensenWitness jorgensen_indicator(const std::vector<Moebius>& gens, int max_len) {
  struct Word {
    Moebius m;
    std::vector<int> letters;
  };
  const int n = static_cast<int>(gens.size());
  std::vector<Word> words;
  std::vector<Word> frontier{{Moebius::identity(), {}}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int k = 0; k < 2 * n; ++k) {
        const int letter = k < n ? k : -(k - n + 1);
        if (!w.letters.empty() && w.letters.back() == -letter - 1) continue;
        if (!w.letters.empty() && letter == -w.letters.back() - 1) continue;
        const Moebius& g = gens[static_cast<std::size_t>(k < n ? k : k - n)];
        Word x{w.m * (k < n ? g : g.inverse()), w.letters};
        x.letters.push_back(letter);
        next.push_back(std::move(x));
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<std::vector<SpherePoint>> fixed;
  fixed.reserve(words.size());
  for (const Word& w : words) {
    const FixedPoints fp = fixed_points(w.m);
    fixed.push_back({fp.first});
    if (fp.second) fixed.back().push_back(*fp.second);
  }
  // A shared fixed point makes the pair elementary. Double fixed points of
  // parabolic words are only accurate to about sqrt(eps), hence the loose
  // tolerances here and on the commutator.
  auto share_fixed_point = [&](std::size_t i, std::size_t j) {
    for (const SpherePoint& u : fixed[i])
      for (const SpherePoint& v : fixed[j])
        if (spherical_distance(u, v) < 1e-5) return true;
    return false;
  };
  JorgensenWitness best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double pa = std::abs(trace_squared(words[i].m) - 4.0);
    if (pa >= best.value) continue;
    for (std::size_t j = 0; j < words.size(); ++j) {
      const Moebius& A = words[i].m;
      const Moebius& B = words[j].m;
      // tr [A, B] does not depend on the signs of A and B.
      const double pc = std::abs((A * B * A.inverse() * B.inverse()).trace() - 2.0);
      if (pc < 1e-6 || pa + pc >= best.value || share_fixed_point(i, j)) continue;
      best = {pa + pc, words[i].letters, words[j].letters};
    }
  }
  return best;
}

}  // namespace rhol
