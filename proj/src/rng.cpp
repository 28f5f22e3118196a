#include "qifs/rng.hpp"

#include <cmath>

namespace qifs {

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller; u1 shifted away from 0 so log stays finite.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

int pick_index(const double* probs, int k, double u, double clamp) {
  double acc = 0.0;
  int last_positive = -1;
  for (int i = 0; i < k; ++i) {
    const double p = probs[i] < clamp ? 0.0 : probs[i];
    if (p > 0.0) last_positive = i;
    acc += p;
    if (u < acc) return i;
  }
  // u landed past the accumulated total (rounding or clamped tail).
  return last_positive >= 0 ? last_positive : k - 1;
}

}  // namespace qifs
