#pragma once

#include <complex>
#include <random>

#include "rhol/moebius.hpp"

namespace testing_support {

using rhol::cplx;

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  cplx in_box(double half) { return {uniform(-half, half), uniform(-half, half)}; }
  cplx in_disc(double radius) {
    for (;;) {
      const cplx z = in_box(radius);
      if (std::abs(z) < radius) return z;
    }
  }
  rhol::Moebius moebius(double half = 2.0) {
    for (;;) {
      const cplx a = in_box(half), b = in_box(half), c = in_box(half), d = in_box(half);
      if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
    }
  }

 private:
  std::mt19937_64 gen_;
};

inline double max_abs_diff(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace testing_support
