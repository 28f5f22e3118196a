#pragma once

#include "qifs/husimi.hpp"
#include "qifs/qstate.hpp"

namespace qifs {

/// N = 3L dimensional torus quantization. Position basis is computational;
/// momentum states are |l>_p = sum_j W_lj |j>_q with W the DFT below.
struct TorusBasis {
  int l = 1;
  int n = 3;

  explicit TorusBasis(int l_);
};

/// W_lj = exp(-2 pi i l j / N) / sqrt(N).
Mat dft_matrix(int n);

Mat cyclic_shift(int n);  // e_j -> e_{j+1 mod n}

/// Position shift X and momentum-label shift Y (= W X W^dag, diagonal in
/// position). They satisfy X Y = exp(2 pi i / N) Y X.
std::pair<Mat, Mat> shift_operators(int n);

enum class TartanMode { LinearSpectral, NonlinearNormalized };

/// The four contraction operators of the quantum tartan. a1/a2 contract in
/// position (targets: first and last third), a3/a4 are their momentum-basis
/// conjugates a_{2+i} = W a_i W^dag.
struct TartanOps {
  int l = 1;
  int n = 3;
  Mat a1, a2, a3, a4;
  Mat w;  // cached DFT

  std::vector<Mat> all() const { return {a1, a2, a3, a4}; }
};

TartanOps tartan_operators(int l);

/// (1/4) sum_i A_i rho A_i^dag, evaluated through the sparse index pattern
/// (O(N^2) per map) rather than dense products.
Mat tartan_apply_linear(const TartanOps& ops, const Mat& rho);

/// (1/4) sum_i A_i rho A_i^dag / tr(A_i rho A_i^dag).
Mat tartan_apply_normalized(const TartanOps& ops, const Mat& rho);

struct TartanInvariantResult {
  DensityMatrix state;
  TartanMode mode;
  double leading_eigenvalue = 0.0;  // linear mode only
  double residual = 0.0;            // max |T(rho) - rho| (after normalization)
  int steps = 0;
  bool converged = false;
};

/// Invariant state of the tartan dynamics. Linear-spectral mode: leading
/// eigenvector of the (non-trace-preserving) map, via a dense eigensolve for
/// N <= 32 and trace-normalized power iteration otherwise. Nonlinear mode:
/// damped fixed-point iteration of the per-map-normalized average.
TartanInvariantResult tartan_invariant(const TartanOps& ops, TartanMode mode,
                                       double tol = 1e-10, int max_steps = 10000);

/// Gaussian reference state localized at (1/2, 1/2), normalized numerically.
Vec reference_state(int n);

/// |q,p> = Y^round(Np - N/2) X^round(Nq - N/2) |kappa>.
Vec coherent_torus(double q, double p, int n);

/// H(p,q) = (1/2pi) <q,p|rho|q,p> at cell centers ((k+1/2)/M, (l+1/2)/M);
/// rows index p, columns q.
HusimiGrid husimi_torus(const Mat& rho, int grid);
HusimiGrid husimi_torus_serial(const Mat& rho, int grid);

/// Normalized Husimi mass over the classically excluded cross (cells whose
/// center has q or p in the open middle third).
double tartan_excluded_mass(const HusimiGrid& grid);

}  // namespace qifs
