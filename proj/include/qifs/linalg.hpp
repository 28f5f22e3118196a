#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace qifs {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double identity_resolution = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double invertible = 1e-12;
inline constexpr double eigen_floor = 1e-12;   // eigenvalues below this count as 0
inline constexpr double fixed_point = 1e-9;    // |lambda - 1| clustering
inline constexpr double commutant = 1e-8;
}  // namespace tol

inline double max_abs(const Mat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

inline bool is_hermitian(const Mat& a, double eps = tol::hermitian) {
  return max_abs(a - a.adjoint()) <= eps;
}

inline bool is_unitary(const Mat& u, double eps = tol::unitary) {
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols())) <= eps;
}

Mat kron(const Mat& a, const Mat& b);

/// Row-major vectorization: vec(A)[i*N + j] = A(i, j).
/// Under this convention vec(A rho B^dag) = kron(A, conj(B)) vec(rho).
Vec vec_rm(const Mat& a);
Mat unvec_rm(const Vec& v, int n);

/// Square root of a Hermitian PSD matrix; eigenvalues below `floor` are clipped to 0.
Mat sqrt_psd(const Mat& herm, double floor = tol::eigen_floor);

/// exp(factor * H) for Hermitian H, via eigendecomposition.
Mat exp_hermitian(const Mat& herm, Cx factor);

/// Projects a near-density matrix onto the density set: hermitize, clip
/// negative eigenvalues at 0, renormalize trace to 1.
Mat project_to_density(const Mat& a);

}  // namespace qifs
