#include <cmath>
#include <numbers>

#include "render.hpp"
#include "rhol/continuation.hpp"
#include "rhol/error.hpp"
#include "rhol/projective.hpp"
#include "rhol/riccati_family.hpp"
#include "rhol/semigroup.hpp"
#include "scene.hpp"

namespace rhol::cli {

namespace {

const std::vector<cplx> kFourthRoots = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};

TransportOptions transport_options(const json& tol) {
  Params p(tol, "scene.tolerances");
  TransportOptions opt;
  opt.err_tol = p.number("err_tol", opt.err_tol);
  opt.min_step = p.number("min_step", opt.min_step);
  opt.pole_margin = p.number("pole_margin", opt.pole_margin);
  opt.initial_step = p.number("initial_step", opt.initial_step);
  opt.max_step = p.number("max_step", opt.max_step);
  opt.max_steps = p.integer("max_steps", opt.max_steps);
  p.finish();
  if (!(opt.err_tol > 0 && opt.min_step > 0 && opt.pole_margin > 0 && opt.initial_step > 0 && opt.max_step > 0 &&
        opt.max_steps > 0)) {
    throw SchemaError("scene.tolerances: values must be positive");
  }
  return opt;
}

int positive_int(const Params& p, const std::string& key, long fallback, long max = 1'000'000'000) {
  const long v = p.integer(key, fallback);
  if (v < 1 || v > max) throw SchemaError(p.path() + "." + key + ": must lie in [1, " + std::to_string(max) + "]");
  return static_cast<int>(v);
}

int count_int(const Params& p, const std::string& key, long fallback, long max = 1'000'000'000) {
  const long v = p.integer(key, fallback);
  if (v < 0 || v > max) throw SchemaError(p.path() + "." + key + ": must lie in [0, " + std::to_string(max) + "]");
  return static_cast<int>(v);
}

double positive(const Params& p, const std::string& key, double fallback) {
  const double v = p.number(key, fallback);
  if (!(v > 0.0)) throw SchemaError(p.path() + "." + key + ": must be positive");
  return v;
}

std::string word_string(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

void sphere_cells(Table::Row& row, const SpherePoint& p) {
  if (p.is_infinity()) {
    row << "inf" << "inf";
  } else {
    row << p.value();
  }
}

Moebius parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) throw SchemaError(where + ": expected [a, b, c, d]");
  const cplx a = as_complex(v[0], where), b = as_complex(v[1], where), c = as_complex(v[2], where),
             d = as_complex(v[3], where);
  if (std::abs(a * d - b * c) < 1e-14) throw SchemaError(where + ": singular matrix");
  return Moebius(a, b, c, d);
}

std::vector<Moebius> parse_matrices(const Params& p) {
  const json& list = p.raw("matrices");
  if (!list.is_array() || list.empty()) throw SchemaError(p.path() + ".matrices: expected a non-empty list");
  std::vector<Moebius> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(parse_matrix(list[i], p.path() + ".matrices[" + std::to_string(i) + "]"));
  return out;
}

// Loop object: {center, radius?, direction?} around a puncture, expanded to a
// 64-gon with a connector from the basepoint.
BasePath parse_loop(const Params& p, cplx basepoint, const std::vector<cplx>& poles, double margin) {
  const cplx center = p.complex("center");
  const double radius = positive(p, "radius", 0.15);
  const std::string dir = p.has("direction") ? p.string("direction") : "ccw";
  p.finish();
  if (dir != "ccw" && dir != "cw") throw SchemaError(p.path() + ".direction: expected \"ccw\" or \"cw\"");
  const BasePath loop = peripheral_loop(basepoint, center, poles, radius, margin, 64);
  return dir == "ccw" ? loop : loop.reversed();
}

BasePath parse_path(const Params& p, const std::string& key) {
  BasePath path{p.complex_list(key)};
  if (path.vertices.empty()) throw SchemaError(p.path() + "." + key + ": needs at least one vertex");
  return path;
}

RationalMap parse_rational(const Params& p) {
  const std::vector<cplx> num = p.complex_list("numerator");
  const std::vector<cplx> den = p.has("denominator") ? p.complex_list("denominator") : std::vector<cplx>{1.0};
  p.finish();
  if (num.empty() || den.empty()) throw SchemaError(p.path() + ": coefficient lists must not be empty");
  bool zero = true;
  for (const cplx& c : den) zero = zero && c == cplx(0.0);
  if (zero) throw SchemaError(p.path() + ".denominator: must not vanish");
  return RationalMap(Polynomial(num), Polynomial(den));
}

DiscMap parse_disc_map(const Params& p) {
  const std::string kind = p.string("kind");
  const double radius = positive(p, "domain_radius", 1.0);
  DiscMap g = DiscMap::affine(1.0, 0.0);
  if (kind == "affine") {
    const cplx scale = p.complex("scale");
    if (scale == cplx(0.0)) throw SchemaError(p.path() + ".scale: must be nonzero");
    g = DiscMap::affine(scale, p.complex("offset", 0.0), radius);
  } else if (kind == "moebius") {
    g = DiscMap::moebius(parse_matrix(p.raw("matrix"), p.path() + ".matrix"), radius);
  } else if (kind == "polynomial") {
    const std::vector<cplx> c = p.complex_list("coefficients");
    if (c.empty()) throw SchemaError(p.path() + ".coefficients: must not be empty");
    g = DiscMap::polynomial(c, radius);
  } else {
    throw SchemaError(p.path() + ".kind: expected affine, moebius or polynomial");
  }
  p.finish();
  return g;
}

Viewport parse_viewport(const Params& p) {
  Viewport v{0.0, 1.1};
  if (p.has("viewport")) {
    const Params vp = p.object("viewport");
    v.center = vp.complex("center", 0.0);
    v.half_width = positive(vp, "half_width", 1.1);
    vp.finish();
  }
  return v;
}

int parse_pixels(const Params& p) {
  const long px = p.integer("pixels", 512);
  if (px < 16 || px > 8192) throw SchemaError(p.path() + ".pixels: must lie in [16, 8192]");
  return static_cast<int>(px);
}

std::vector<Moebius> monodromy_of(cplx lambda, cplx basepoint, const TransportOptions& opt) {
  return monodromy_representation(explicit_riccati(lambda), basepoint,
                                  standard_peripheral_loops(basepoint, 0.15, opt.pole_margin), opt);
}

// ---------------------------------------------------------------------------

Job schwarzian_verify(const Params& p, const Scene&) {
  const cplx lambda = p.complex("lambda");
  const int samples = count_int(p, "samples", 100, 10'000'000);
  const long seed = p.integer("seed", 1);
  p.finish();
  return [=] {
    Table t({"sample", "t_re", "t_im", "relative_residual"});
    const auto rows = schwarzian_residuals(lambda, samples, static_cast<unsigned>(seed));
    for (std::size_t i = 0; i < rows.size(); ++i) t.row() << i << rows[i].t << rows[i].relative_residual;
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job monodromy(const Params& p, const Scene& scene) {
  const TransportOptions opt = transport_options(scene.tolerances);
  const cplx lambda = p.complex("lambda", 0.0);
  const cplx basepoint = p.complex("basepoint", 0.0);
  const RiccatiSystem sys = explicit_riccati(lambda);
  std::vector<BasePath> loops;
  std::vector<std::string> labels;
  if (p.has("loops")) {
    for (const Params& l : p.object_list("loops")) {
      loops.push_back(parse_loop(l, basepoint, sys.poles(), opt.pole_margin));
      labels.push_back("loop " + std::to_string(labels.size()));
    }
  } else {
    loops = standard_peripheral_loops(basepoint, positive(p, "radius", 0.15), opt.pole_margin);
    labels = {"1", "i", "-1", "-i"};
  }
  p.finish();
  return [=] {
    Table t({"loop", "a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "trace_squared_re",
             "trace_squared_im", "class"});
    const std::vector<Moebius> gens = monodromy_representation(sys, basepoint, loops, opt);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Moebius& m = gens[i];
      t.row() << labels[i] << m.a() << m.b() << m.c() << m.d() << trace_squared(m)
              << std::string(to_string(classify(m, 1e-6)));
    }
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job trace_scan(const Params& p, const Scene& scene) {
  const TransportOptions opt = transport_options(scene.tolerances);
  std::vector<cplx> lambdas;
  if (p.has("lambdas")) {
    lambdas = p.complex_list("lambdas");
  } else {
    const Params g = p.object("grid");
    const std::vector<double> re = g.number_list("re"), im = g.number_list("im");
    g.finish();
    if (re.size() != 3 || im.size() != 3) throw SchemaError(g.path() + ": re and im are [min, max, count]");
    const int nr = static_cast<int>(re[2]), ni = static_cast<int>(im[2]);
    if (nr < 1 || ni < 1 || nr != re[2] || ni != im[2] || nr * static_cast<long>(ni) > 1'000'000)
      throw SchemaError(g.path() + ": counts must be positive integers");
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < ni; ++j)
        lambdas.emplace_back(nr == 1 ? re[0] : re[0] + (re[1] - re[0]) * i / (nr - 1),
                             ni == 1 ? im[0] : im[0] + (im[1] - im[0]) * j / (ni - 1));
  }
  // Product of peripheral loops, followed in list order.
  const std::vector<cplx> poles = kFourthRoots;
  BasePath loop;
  if (p.has("loops")) {
    for (const Params& l : p.object_list("loops")) {
      const BasePath next = parse_loop(l, 0.0, poles, opt.pole_margin);
      loop = loop.vertices.empty() ? next : loop.then(next);
    }
    if (loop.vertices.empty()) throw SchemaError(p.path() + ".loops: must not be empty");
  } else {
    loop = peripheral_loop(0.0, 1.0, poles, 0.15, opt.pole_margin).then(
        peripheral_loop(0.0, cplx(0, 1), poles, 0.15, opt.pole_margin));
  }
  const double real_tol = positive(p, "real_tol", 1e-6);
  p.finish();
  return [=] {
    Table t({"lambda_re", "lambda_im", "trace_squared_re", "trace_squared_im", "real", "elliptic_range"});
    for (const TraceSample& s : trace_map_scan(lambdas, loop, opt, real_tol))
      t.row() << s.lambda << s.trace_squared << s.real << s.elliptic_range;
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job limit_set_cloud(const Params& p, const Scene& scene) {
  const std::string group = p.string("group");
  std::function<std::vector<Moebius>()> gens;
  if (group == "ideal-polygon") {
    const std::vector<cplx> vertices = p.complex_list("vertices");
    gens = [vertices] { return ideal_polygon_group(vertices).generators; };
  } else if (group == "monodromy") {
    const TransportOptions opt = transport_options(scene.tolerances);
    const cplx lambda = p.complex("lambda", 0.0), basepoint = p.complex("basepoint", 0.0);
    gens = [=] { return monodromy_of(lambda, basepoint, opt); };
  } else if (group == "generators") {
    const std::vector<Moebius> mats = parse_matrices(p);
    gens = [mats] { return mats; };
  } else {
    throw SchemaError(p.path() + ".group: expected ideal-polygon, monodromy or generators");
  }
  const int depth = count_int(p, "depth", 6, 14);
  const cplx seed = p.complex("seed", 0.0);
  const Viewport view = parse_viewport(p);
  const int pixels = parse_pixels(p);
  p.finish();
  return [=] {
    Table t({"x", "y", "word_length"});
    std::vector<cplx> cloud;
    for (const OrbitPoint& o : limit_set_orbit(gens(), depth, SpherePoint(seed))) {
      auto& row = t.row();
      sphere_cells(row, o.point);
      row << o.word_length;
      if (o.point.is_finite()) cloud.push_back(o.point.value());
    }
    return Artifacts{{{".csv", t.str()}, {".ppm", render_cloud(cloud, view, pixels)}}};
  };
}

Job boundary_probe(const Params& p, const Scene& scene) {
  const TransportOptions opt = transport_options(scene.tolerances);
  const cplx lambda = p.complex("lambda", 0.0);
  const cplx basepoint = p.complex("basepoint", 0.0);
  const int directions = count_int(p, "directions", 36, 100'000);
  const std::vector<double> radii = p.number_list("radii");
  for (double r : radii)
    if (!(r > 0.0)) throw SchemaError(p.path() + ".radii: entries must be positive");
  ContinuationOptions copt;
  copt.transport = opt;
  copt.budget_factor = positive(p, "budget_factor", copt.budget_factor);
  p.finish();
  return [=] {
    const ProjectiveStructure ps = from_quadratic(QuadDifferential{explicit_schwarzian(lambda), kFourthRoots}, basepoint, opt);
    Table t({"angle", "singular", "radius", "parameter", "end_re", "end_im", "kind"});
    for (const ProbeResult& r : natural_boundary_probe(ps, directions, radii, copt)) {
      auto& row = t.row();
      row << r.angle << r.singular << r.radius << r.parameter;
      sphere_cells(row, r.endpoint);
      row << std::string(to_string(r.kind));
    }
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job shadow(const Params& p, const Scene& scene) {
  std::function<std::vector<Moebius>()> gens;
  if (p.has("matrices")) {
    const std::vector<Moebius> mats = parse_matrices(p);
    gens = [mats] { return mats; };
  } else {
    const TransportOptions opt = transport_options(scene.tolerances);
    const cplx lambda = p.complex("lambda"), basepoint = p.complex("basepoint", 0.0);
    gens = [=] { return monodromy_of(lambda, basepoint, opt); };
  }
  const cplx target = p.complex("target"), z0 = p.complex("z0");
  const double delta = p.number("delta", 0.05);
  const int max_len = positive_int(p, "max_word_len", 8, 12);
  const int steps = count_int(p, "steps", 5, 1000);
  p.finish();
  return [=] {
    const ShadowResult r = shadowing_word_sequence(gens(), target, z0, delta, max_len, steps);
    Table t({"step", "word", "distance_to_target", "log_derivative"});
    for (std::size_t i = 0; i < r.steps.size(); ++i)
      t.row() << i + 1 << word_string(r.steps[i].word) << r.steps[i].distance_to_target << r.steps[i].log_derivative;
    Table s({"quantity", "value"});
    s.row() << "delta" << r.delta;
    s.row() << "initial_distance" << r.initial_distance;
    return Artifacts{{{".csv", t.str()}, {"_summary.csv", s.str()}}};
  };
}

Job ifs(const Params& p, const Scene&) {
  std::vector<DiscMap> maps;
  for (const Params& m : p.object_list("maps")) maps.push_back(parse_disc_map(m));
  if (maps.empty()) throw SchemaError(p.path() + ".maps: must not be empty");
  const int depth = positive_int(p, "depth", 8, 20);
  const int modulus_depth = count_int(p, "modulus_depth", 0, 16);
  const Viewport view = parse_viewport(p);
  const int pixels = parse_pixels(p);
  p.finish();
  return [=] {
    const IFSystem sys = IFSystem::make(maps);
    Table t({"address", "x", "y", "cylinder_diam"});
    std::vector<cplx> cloud;
    for (const AddressedPoint& a : limit_set(sys, depth)) {
      t.row() << word_string(a.address) << a.point << a.cylinder_diam;
      cloud.push_back(a.point);
    }
    Artifacts out{{{".csv", t.str()}, {".ppm", render_cloud(cloud, view, pixels)}}};
    if (modulus_depth > 0) {
      const ModulusGrowth g = modulus_growth_check(sys, modulus_depth);
      Table s({"quantity", "value"});
      s.row() << "c_estimate" << g.c_estimate;
      for (std::size_t n = 0; n < g.min_modulus.size(); ++n) s.row() << "min_modulus_" + std::to_string(n + 1) << g.min_modulus[n];
      s.row() << "violations" << g.violations.size();
      out.files["_summary.csv"] = s.str();
    }
    return out;
  };
}

Job renormalize(const Params& p, const Scene&) {
  const cplx lambda = p.complex("lambda");
  const DiscMap g = parse_disc_map(p.object("g"));
  std::optional<int> N;
  if (p.has("N")) N = positive_int(p, "N", 1, 10'000);
  const int iterations = count_int(p, "iterations", 20, 10'000);
  RenormalizationOptions opt;
  opt.grid = positive_int(p, "grid", opt.grid, 4096);
  opt.max_degree = positive_int(p, "max_degree", opt.max_degree, 64);
  p.finish();
  return [=] {
    const RenormalizationResult r = loray_rebelo_renormalize(lambda, g, N, iterations, opt);
    Table t({"k", "sup_distance", "refit_residual", "coefficients"});
    for (std::size_t k = 0; k < r.steps.size(); ++k)
      t.row() << k << r.steps[k].sup_distance << r.steps[k].refit_residual << r.steps[k].deviation.size();
    Table s({"quantity", "value"});
    s.row() << "N" << r.N;
    s.row() << "affine_degenerate" << r.affine_degenerate;
    s.row() << "lambda_distance" << r.lambda_distance;
    return Artifacts{{{".csv", t.str()}, {"_summary.csv", s.str()}}};
  };
}

Job dense_limit(const Params& p, const Scene&) {
  const cplx lambda = p.complex("lambda");
  const int k = positive_int(p, "k", 1, 10'000);
  const double r = positive(p, "r", 0.1);
  std::vector<DiscMap> g_list;
  if (p.has("g_list")) {
    for (const Params& m : p.object_list("g_list")) g_list.push_back(parse_disc_map(m));
  } else {
    const double margin = positive(p, "lattice_margin", 0.9);
    if (margin > 1.0) throw SchemaError(p.path() + ".lattice_margin: must be <= 1");
    g_list = lattice_translations(r, std::pow(std::abs(lambda), k) * r, margin);
  }
  DenseLimitOptions opt;
  opt.grid = positive_int(p, "grid", opt.grid, 4096);
  opt.inverse_steps = count_int(p, "inverse_steps", opt.inverse_steps, 10'000);
  p.finish();
  return [=] {
    const DenseLimitResult d = dense_limit_construction(lambda, k, g_list, r, opt);
    Table t({"x", "y", "max_modulus", "chain"});
    for (const CoverageEntry& e : d.coverage) t.row() << e.start << e.max_modulus << word_string(e.chain);
    Table s({"quantity", "value"});
    s.row() << "maps" << g_list.size();
    s.row() << "M" << d.M;
    s.row() << "contraction" << d.contraction;
    s.row() << "grid_points" << d.coverage.size();
    return Artifacts{{{".csv", t.str()}, {"_summary.csv", s.str()}}};
  };
}

Job painleve(const Params& p, const Scene& scene) {
  const TransportOptions opt = transport_options(scene.tolerances);
  const RationalMap R = parse_rational(p.object("R")), S = parse_rational(p.object("S"));
  const cplx x0 = p.complex("x0"), y0 = p.complex("y0");
  BasePath path = parse_path(p, "path");
  path.refinement = p.number("refinement", path.refinement);
  p.finish();
  return [=] {
    const PainleveResult r = painleve_continue(R, S, x0, y0, path, opt);
    Table t({"status", "singular_kind", "parameter_reached", "x_re", "x_im", "y_re", "y_im", "conserved_drift",
             "path_length", "exact_primitives", "steps"});
    t.row() << std::string(to_string(r.outcome.status)) << std::string(to_string(r.outcome.singular_kind))
            << r.outcome.parameter_reached << r.outcome.final.x << r.y << r.conserved_drift << r.path_length
            << r.exact_primitives << r.outcome.steps;
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job curve_holonomy(const Params& p, const Scene& scene) {
  const TransportOptions opt = transport_options(scene.tolerances);
  const cplx lambda = p.complex("lambda", 0.0);
  const cplx t0 = p.complex("t0"), y0 = p.complex("y0");
  const BasePath path = parse_path(p, "path");
  const RationalMap curve = parse_rational(p.object("curve"));
  const double tol = positive(p, "newton_tol", 1e-12);
  p.finish();
  return [=] {
    const CurveHit h = holonomy_to_curve(explicit_riccati(lambda), t0, y0, path, curve, tol, opt);
    Table t({"t_re", "t_im", "y_re", "y_im", "iterations", "residual", "slope"});
    t.row() << h.t << h.y << h.iterations << h.residual << h.slope;
    return Artifacts{{{".csv", t.str()}}};
  };
}

Job compactify(const Params& p, const Scene&) {
  CuspData cd;
  for (long n : p.integer_list("n")) cd.n.push_back(static_cast<int>(n));
  if (p.has("punctures")) {
    cd.punctures = p.complex_list("punctures");
    if (cd.punctures.size() != cd.n.size()) throw SchemaError(p.path() + ".punctures: one per entry of n");
  } else {
    for (std::size_t k = 0; k < cd.n.size(); ++k)
      cd.punctures.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cd.n.size())));
  }
  p.finish();
  return [=] {
    Table t({"quantity", "value"});
    t.row() << "tangency" << tangency_count(cd);
    t.row() << "delta_self_intersection" << diagonal_self_intersection(cd).value;
    return Artifacts{{{".csv", t.str()}}};
  };
}

using Builder = Job (*)(const Params&, const Scene&);

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"schwarzian-verify", schwarzian_verify}, {"monodromy", monodromy},
      {"trace-scan", trace_scan},               {"limit-set", limit_set_cloud},
      {"boundary-probe", boundary_probe},       {"shadow", shadow},
      {"ifs", ifs},                             {"renormalize", renormalize},
      {"dense-limit", dense_limit},             {"painleve", painleve},
      {"curve-holonomy", curve_holonomy},       {"compactify", compactify},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Job prepare(const Scene& scene) {
  for (const auto& [name, build] : registry()) {
    if (name != scene.command) continue;
    const Params p(scene.params, "scene.params");
    try {
      return build(p, scene);
    } catch (const NumericError& e) {
      // Library-side argument checks during preparation are schema problems.
      throw SchemaError(e.what());
    }
  }
  throw SchemaError("scene.command: unknown command \"" + scene.command + "\"");
}

}  // namespace rhol::cli
