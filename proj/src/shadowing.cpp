#include <cmath>
#include <limits>
#include <string>

#include "rhol/continuation.hpp"
#include "rhol/error.hpp"

namespace rhol {

namespace {

struct Candidate {
  std::vector<int> word;
  Moebius beta;
  double landing = std::numeric_limits<double>::infinity();
};

}  // namespace

ShadowResult shadowing_word_sequence(const std::vector<Moebius>& gens, const SpherePoint& target,
                                     const SpherePoint& z0, double delta, int max_word_len, int steps) {
  if (!(delta > 0.0 && delta < 0.5)) throw NumericError(ErrorKind::InvalidArgument, "delta must lie in (0, 0.5)");
  ShadowResult out;
  out.delta = delta;
  out.initial_distance = spherical_distance(z0, target);
  if (steps <= 0) return out;
  if (gens.empty()) throw NumericError(ErrorKind::NoCandidateWord, "no generators");

  const int n = static_cast<int>(gens.size());
  std::vector<Moebius> letters;
  for (const Moebius& g : gens) letters.push_back(g);
  for (const Moebius& g : gens) letters.push_back(g.inverse());
  auto letter_index = [n](int k) { return k < n ? k : -(k - n + 1); };
  auto inverse_of = [n](int k) { return k < n ? k + n : k - n; };

  const SpherePoint z0_anti = z0.antipode();
  SpherePoint u = target, v = target.antipode();
  Moebius composed = Moebius::identity();  // beta_n ... beta_1

  for (int step = 1; step <= steps; ++step) {
    Candidate best;
    int best_len = max_word_len + 1;
    std::vector<int> word;
    // Depth-first over reduced words; once an admissible word of length L is
    // known, longer words are not explored.
    auto visit = [&](auto&& self, const Moebius& beta, int last) -> void {
      const int len = static_cast<int>(word.size());
      if (len > 0 && len <= best_len) {
        const SpherePoint bu = beta.apply(u), bv = beta.apply(v);
        const double du = spherical_distance(bu, z0), dv = spherical_distance(bv, z0_anti);
        if (du <= 0.5 * delta && dv <= 0.5 * delta && derivative_norm(beta, u) >= 4.0 &&
            derivative_norm(beta, v) <= 0.25 && (len < best_len || du < best.landing)) {
          best_len = len;
          best = {word, beta, du};
        }
      }
      if (len >= best_len || len >= max_word_len) return;
      for (int k = 0; k < 2 * n; ++k) {
        if (last >= 0 && k == inverse_of(last)) continue;
        word.push_back(letter_index(k));
        self(self, beta * letters[static_cast<std::size_t>(k)], k);
        word.pop_back();
      }
    };
    visit(visit, Moebius::identity(), -1);
    if (best.word.empty()) {
      throw NumericError(ErrorKind::NoCandidateWord,
                         "no word of length <= " + std::to_string(max_word_len) + " is admissible at step " +
                             std::to_string(step));
    }
    u = best.beta.apply(u);
    v = best.beta.apply(v);
    composed = best.beta * composed;
    const Moebius A = composed.inverse();
    ShadowStep s;
    s.word = best.word;
    s.beta = best.beta;
    s.u = u;
    s.v = v;
    s.distance_to_target = spherical_distance(A.apply(z0), target);
    s.log_derivative = std::log(derivative_norm(A, z0));
    out.A.push_back(A);
    out.steps.push_back(std::move(s));
  }
  return out;
}

}  // namespace rhol
