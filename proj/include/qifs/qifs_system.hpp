#pragma once

#include <functional>
#include <variant>

#include "qifs/channel.hpp"
#include "qifs/rng.hpp"

namespace qifs {

// ---------------------------------------------------------------------------
// Pure-state QIFS: maps from invertible V_i, probabilities from W_i forming
// an operational resolution of identity.

struct PureQIFS {
  std::vector<Mat> v;  // invertible
  std::vector<Mat> w;  // sum W^dag W = 1

  int dim() const { return v.empty() ? 0 : static_cast<int>(v[0].rows()); }
  int k() const { return static_cast<int>(v.size()); }
  static PureQIFS make(std::vector<Mat> v, std::vector<Mat> w);  // validates
};

/// F_i(phi) = V_i phi / |V_i phi|. Throws when the image is numerically zero.
Vec pure_map(const Mat& v, const Vec& phi);

/// p_i(phi) = |W_i phi|^2.
double pure_probability(const Mat& w, const Vec& phi);

// ---------------------------------------------------------------------------
// Mixed-state QIFS

struct ConjugateBy {
  Mat v;  // G(rho) = V rho V^dag / tr(V rho V^dag)
};
struct Homothety {
  Mat target;  // G(rho) = (rho + 2 target)/3
};
using MixedMap = std::variant<ConjugateBy, Homothety>;

struct ConstantQProb {
  double p = 1.0;
};
struct OperatorProb {
  Mat l;  // p(rho) = tr(L rho); L Hermitian positive, sum L_i = 1
};
using MixedProb = std::variant<ConstantQProb, OperatorProb>;

struct MixedQIFS {
  std::vector<MixedMap> maps;
  std::vector<MixedProb> probs;

  int k() const { return static_cast<int>(maps.size()); }
  static MixedQIFS make(std::vector<MixedMap> maps, std::vector<MixedProb> probs);
};

/// Applies one mixed-state map (Eq.-(8)-style conjugation renormalizes the
/// trace). Throws when the conjugated trace vanishes.
Mat mixed_map(const MixedMap& g, const Mat& rho);

double mixed_probability(const MixedProb& p, const Mat& rho);

/// The probability-averaged one-step map sum_i p_i(rho) G_i(rho).
Mat averaged_map(const MixedQIFS& q, const Mat& rho);

// ---------------------------------------------------------------------------
// Homogeneous QIFS: W_i = V_i, with the induced linear channel.

struct HomogeneousQIFS {
  PureQIFS pure;          // w == v entrywise
  QuantumChannel channel; // Lambda(rho) = sum V rho V^dag

  static HomogeneousQIFS from_kraus(std::vector<Mat> kraus);
  MixedQIFS as_mixed() const;
};

/// Two-level atom in a constant field, randomly pulsed: U1 = exp(-i H0 T),
/// U2 = exp(-i (H0 T + A)) with H0 = (bz/2) sigma_3 and A the integrated
/// pulse; probabilities (1-p, p).
HomogeneousQIFS atomic_qifs(double bz, double period, const Mat& pulse_integral,
                            double p);

/// Time-sliced alternative for a genuinely time-dependent pulse V(t):
/// product of exp(-i (H0 + V(t_s)) dt) over midpoints, later times leftmost.
Mat atomic_pulse_trotter(double bz, double period,
                         const std::function<Mat(double)>& v, int slices);

// ---------------------------------------------------------------------------
// Trajectories and barycenters

std::vector<Vec> qifs_trajectory(const PureQIFS& q, const Vec& phi0, int n,
                                 std::uint64_t seed);
std::vector<Mat> qifs_trajectory(const MixedQIFS& q, const Mat& rho0, int n,
                                 std::uint64_t seed);

/// Mean visited state after burn-in; pure states are averaged as projectors.
DensityMatrix barycenter_estimate(const std::vector<Mat>& states, int burn_in = 100);
DensityMatrix barycenter_estimate(const std::vector<Vec>& kets, int burn_in = 100);

}  // namespace qifs
