#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace rhol {

template <std::size_t N>
using CState = std::array<std::complex<double>, N>;

struct OdeOptions {
  /// Local error per unit of the independent variable.
  double err_tol = 1e-10;
  double min_step = 1e-12;
  double initial_step = 1e-2;
  double max_step = 0.25;
  long max_steps = 2'000'000;
};

enum class OdeStatus { completed, step_collapse, stopped, budget_exceeded };

template <std::size_t N>
struct OdeResult {
  CState<N> y;
  double t = 0.0;
  OdeStatus status = OdeStatus::completed;
  long accepted = 0;
  long rejected = 0;
  double last_step = 0.0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
CState<N> axpy(const CState<N>& y, double h, std::initializer_list<std::pair<double, const CState<N>*>> terms) {
  CState<N> out = y;
  for (const auto& [w, k] : terms) {
    for (std::size_t i = 0; i < N; ++i) out[i] += h * w * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// Adaptive Dormand-Prince integration of y' = f(t, y) from t0 to t1 (t1 >= t0).
/// `post(t, y, h)` runs after every accepted step; it may modify y (projection,
/// renormalization, chart changes) and returns false to stop early.
template <std::size_t N, class F, class Post>
OdeResult<N> dopri5(F&& f, double t0, double t1, CState<N> y, const OdeOptions& opt, Post&& post) {
  using namespace detail;
  OdeResult<N> res;
  res.t = t0;
  double h = std::min(opt.initial_step, opt.max_step);
  while (res.t < t1) {
    if (res.accepted + res.rejected >= opt.max_steps) {
      res.status = OdeStatus::budget_exceeded;
      break;
    }
    const double remaining = t1 - res.t;
    // Avoid a sliver of a final step.
    if (h >= remaining || remaining - h < 1e-3 * h) h = remaining;
    if (h < opt.min_step && h < remaining) {
      res.status = OdeStatus::step_collapse;
      break;
    }
    const double t = res.t;
    const CState<N> k1 = f(t, y);
    const CState<N> k2 = f(t + c2 * h, axpy<N>(y, h, {{a21, &k1}}));
    const CState<N> k3 = f(t + c3 * h, axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
    const CState<N> k4 = f(t + c4 * h, axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const CState<N> k5 =
        f(t + c5 * h, axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const CState<N> k6 =
        f(t + h, axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const CState<N> y5 =
        axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const CState<N> k7 = f(t + h, y5);
    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = std::max({1.0, std::abs(y[i]), std::abs(y5[i])});
      err = std::max(err, std::abs(e) / scale);
      finite = finite && std::isfinite(y5[i].real()) && std::isfinite(y5[i].imag());
    }
    if (!finite) err = 1e300;
    const double err_unit = err / h;
    if (err_unit <= opt.err_tol) {
      res.t = (h == remaining) ? t1 : t + h;
      y = y5;
      ++res.accepted;
      res.last_step = h;
      const double grow = err_unit == 0.0 ? 5.0 : 0.9 * std::pow(opt.err_tol / err_unit, 0.2);
      h = std::min(opt.max_step, h * std::clamp(grow, 0.2, 5.0));
      if (!post(res.t, y, res.last_step)) {
        res.status = OdeStatus::stopped;
        break;
      }
    } else {
      ++res.rejected;
      const double shrink = 0.9 * std::pow(opt.err_tol / err_unit, 0.2);
      h *= std::clamp(shrink, 0.1, 0.9);
    }
  }
  res.y = y;
  return res;
}

template <std::size_t N, class F>
OdeResult<N> dopri5(F&& f, double t0, double t1, CState<N> y, const OdeOptions& opt) {
  return dopri5<N>(std::forward<F>(f), t0, t1, y, opt,
                   [](double, CState<N>&, double) { return true; });
}

}  // namespace rhol
