#include "qifs/qstate.hpp"

#include <algorithm>
#include <cmath>

namespace qifs {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Ket::Ket(Vec amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("Ket: empty amplitude vector");
  if (std::abs(amps_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("Ket: norm differs from 1 beyond 1e-12");
}

Ket Ket::normalized(Vec amplitudes) {
  const double n = amplitudes.norm();
  if (n <= 1e-14) throw std::invalid_argument("Ket::normalized: numerically zero vector");
  return Ket(amplitudes / n);
}

Mat PureState::projector() const {
  return ket_.amps() * ket_.amps().adjoint();
}

bool approx_equal(const PureState& a, const PureState& b, double eps) {
  if (a.dim() != b.dim()) return false;
  const double overlap = std::abs(a.ket().amps().dot(b.ket().amps()));
  return std::abs(overlap - 1.0) <= eps;
}

DensityMatrix::DensityMatrix(const Mat& m) : m_(m) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  if (!is_hermitian(m_, tol::hermitian))
    throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
  if (std::abs(m_.trace().real() - 1.0) > tol::trace ||
      std::abs(m_.trace().imag()) > tol::trace)
    throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-10");
  m_ = hermitize(m_);
  Eigen::SelfAdjointEigenSolver<Mat> es(m_);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::psd)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-10");
  if (min_eig < 0.0) {
    // Accumulated rounding from long channel iterations; clip and renormalize.
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    lam /= lam.sum();
    m_ = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  }
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
  return DensityMatrix(k.amps() * k.amps().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  return DensityMatrix(Mat::Identity(n, n) / static_cast<double>(n));
}

double fubini_study(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "fubini_study");
  const double overlap = std::abs(a.ket().amps().dot(b.ket().amps()));
  return std::acos(std::clamp(overlap, 0.0, 1.0));
}

double hs_distance(const Mat& a, const Mat& b) {
  require_same_dim(a.rows(), b.rows(), "hs_distance");
  return (a - b).norm();
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return hs_distance(a.matrix(), b.matrix());
}

double trace_distance(const Mat& a, const Mat& b) {
  require_same_dim(a.rows(), b.rows(), "trace_distance");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a - b));
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double bures_distance(const Mat& a, const Mat& b) {
  require_same_dim(a.rows(), b.rows(), "bures_distance");
  if (!is_hermitian(a, 1e-10) || !is_hermitian(b, 1e-10))
    throw std::invalid_argument("bures_distance: non-Hermitian input");
  const Mat ra = sqrt_psd(a);
  const double fidelity = sqrt_psd(ra * b * ra).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - fidelity)));
}

double bures_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return bures_distance(a.matrix(), b.matrix());
}

double von_neumann_entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(rho));
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > tol::eigen_floor) s -= lam * std::log(lam);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

Mat partial_trace(const Mat& joint, int dim_a, int dim_b, Subsystem traced) {
  if (joint.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("partial_trace: dimension does not factor as dim_a*dim_b");
  if (traced == Subsystem::B) {
    Mat out = Mat::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b = 0; b < dim_b; ++b)
          out(a, a2) += joint(a * dim_b + b, a2 * dim_b + b);
    return out;
  }
  Mat out = Mat::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int b2 = 0; b2 < dim_b; ++b2)
      for (int a = 0; a < dim_a; ++a)
        out(b, b2) += joint(a * dim_b + b, a * dim_b + b2);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, int dim_a, int dim_b,
                            Subsystem traced) {
  return DensityMatrix(partial_trace(joint.matrix(), dim_a, dim_b, traced));
}

}  // namespace qifs
