#include "qifs/linalg.hpp"

namespace qifs {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec vec_rm(const Mat& a) {
  const Eigen::Index n = a.rows(), m = a.cols();
  Vec v(n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) v[i * m + j] = a(i, j);
  return v;
}

Mat unvec_rm(const Vec& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n)
    throw std::invalid_argument("unvec_rm: size is not n^2");
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = v[i * n + j];
  return a;
}

Mat sqrt_psd(const Mat& herm, double floor) {
  if (!is_hermitian(herm, 1e-10))
    throw std::invalid_argument("sqrt_psd: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(herm));
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam[i] = lam[i] > floor ? std::sqrt(lam[i]) : 0.0;
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Mat exp_hermitian(const Mat& herm, Cx factor) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(herm));
  Vec phases(herm.rows());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(factor * es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat project_to_density(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a));
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  double tr = lam.sum();
  if (tr <= 0.0)
    throw std::runtime_error("project_to_density: nonpositive trace after clipping");
  lam /= tr;
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qifs
