#pragma once

#include <optional>
#include <vector>

#include "rhol/moebius.hpp"

namespace rhol {

/// Holomorphic map on the closed disc |z| <= domain_radius.
class DiscMap {
 public:
  enum class Kind { moebius, affine, polynomial };

  static DiscMap moebius(const Moebius& m, double domain_radius = 1.0);
  static DiscMap affine(cplx scale, cplx offset, double domain_radius = 1.0);
  /// Coefficients in ascending powers.
  static DiscMap polynomial(std::vector<cplx> coefficients, double domain_radius = 1.0);

  Kind kind() const { return kind_; }
  double domain_radius() const { return radius_; }
  const Moebius& as_moebius() const { return m_; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// Preimage of w; Newton from w for the polynomial kind.
  cplx inverse(cplx w) const;

  /// Exact for moebius/affine; polynomial maps check g' != 0 at 200
  /// interior/boundary samples.
  bool injective() const;
  /// Image of the boundary (128 samples) strictly inside |z| < radius - 1e-9.
  bool contracting() const;
  bool is_affine() const;
  /// The map as an element of PSL(2, C); only for moebius/affine kinds.
  Moebius to_moebius() const;

 private:
  Kind kind_ = Kind::affine;
  double radius_ = 1.0;
  Moebius m_;
  std::vector<cplx> coeffs_;
};

/// Iterated function system of contracting maps on a common disc.
struct IFSystem {
  std::vector<DiscMap> maps;
  /// Pairwise image closures disjoint (boundary samples > 1e-6 apart, no nesting).
  bool separation = false;

  /// Validates contraction and the common domain, then sets `separation`.
  static IFSystem make(std::vector<DiscMap> maps);
};

struct AddressedPoint {
  std::vector<int> address;  // 1-based map indices, outermost first
  cplx point;                // image of the disc center under the composed map
  double cylinder_diam = 0.0;
};

/// One point per word of length `depth`, in lexicographic address order.
std::vector<AddressedPoint> limit_set(const IFSystem& ifs, int depth);

/// Boundary samples (128) of the cylinder h_{i1} o ... o h_{iN}(disc).
std::vector<cplx> cylinder_boundary(const IFSystem& ifs, const std::vector<int>& address);

/// Smallest boundary-sample distance between cylinders with different
/// addresses of equal length N, for every N <= depth (entry N-1). Nested
/// cylinders count as distance 0.
std::vector<double> cylinder_separation(const IFSystem& ifs, int depth);

/// Ring between |z| = outer_radius and `inner`, normalized as -log(r) for the
/// round annulus r < |z| < 1.
double annulus_modulus(double outer_radius, const Circle& inner);
/// Ring between two nested round circles.
double annulus_modulus(const Circle& outer, const Circle& inner);

struct ModulusViolation {
  std::vector<int> address;
  double modulus = 0.0;
  double chain_bound = 0.0;  // m(prefix ring) + m(last-letter ring)
};

struct ModulusGrowth {
  double c_estimate = 0.0;          // min over words of m(B \ h_I B) / |I|
  std::vector<double> min_modulus;  // entry N-1: min over words of length N
  std::vector<ModulusViolation> violations;
};

ModulusGrowth modulus_growth_check(const IFSystem& ifs, int max_depth);

struct RenormalizationStep {
  /// g_k - id as a polynomial on the 1/3-disc, ascending powers.
  std::vector<cplx> deviation;
  double sup_distance = 0.0;   // sup |g_k - id| over the evaluation grid
  double refit_residual = 0.0; // relative to sup |g_k - id|
  DiscMap map() const;
};

struct RenormalizationResult {
  int N = 0;
  bool affine_degenerate = false;
  double lambda_distance = 0.0;  // |lambda - 1|
  std::vector<RenormalizationStep> steps;  // g_0, ..., g_iterations
};

struct RenormalizationOptions {
  int grid = 64;
  int max_degree = 24;
  double max_residual = 1e-9;
};

/// g_{k+1} = f^-N o [f, g_k] o f^N with f(z) = lambda z and
/// [f, g] = f o g o f^-1 o g^-1. N defaults to the smallest N >= 1 with
/// |lambda|^(N-1) / 3 + 2 sup|g - id| / |lambda| < 1/3, so that every
/// evaluation of g_k stays in the 1/3-disc.
RenormalizationResult loray_rebelo_renormalize(cplx lambda, const DiscMap& g, std::optional<int> N,
                                               int iterations, const RenormalizationOptions& opt = {});

struct CoverageEntry {
  cplx start;
  std::vector<int> chain;  // 1-based indices i_1, i_2, ...
  double max_modulus = 0.0;  // largest |p_n| along the inverse orbit
};

struct DenseLimitResult {
  std::vector<DiscMap> h_list;  // h_i = g_i^-1 o f^k, as evaluable maps
  double M = 0.0;               // sampled sup |(g_i^-1)'| on the 1/4-disc
  double contraction = 0.0;     // 2 M |lambda|^k
  std::vector<CoverageEntry> coverage;
};

struct DenseLimitOptions {
  int grid = 41;
  int inverse_steps = 30;
};

/// Inverse orbits p_n = lambda^-k g_{i_n}(p_{n-1}) from a grid of the r-disc,
/// choosing at each step the index with the smallest |g_i(p)|.
DenseLimitResult dense_limit_construction(cplx lambda, int k, const std::vector<DiscMap>& g_list, double r,
                                          const DenseLimitOptions& opt = {});

/// Translations z -> z - c over a hexagonal lattice of centers c whose
/// rho-balls cover the r-disc (rho = |lambda|^k r shrunk by `margin`).
std::vector<DiscMap> lattice_translations(double r, double rho, double margin = 0.9);

}  // namespace rhol
