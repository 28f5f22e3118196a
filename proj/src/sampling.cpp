#include "qifs/sampling.hpp"

namespace qifs {

namespace {

Mat ginibre(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Cx(rng.normal(), rng.normal());
  return g;
}

}  // namespace

Mat haar_unitary(int n, Rng& rng) {
  const Mat g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Cx d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Cx(1.0, 0.0);
  }
  return q;
}

Vec random_ket(int n, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = Cx(rng.normal(), rng.normal());
  return v / v.norm();
}

Mat random_density(int n, Rng& rng) {
  const Mat g = ginibre(n, n, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

Mat random_hermitian(int n, Rng& rng) {
  return hermitize(ginibre(n, n, rng));
}

std::vector<Mat> random_kraus_set(int n, int k, Rng& rng) {
  // First n columns of a Haar unitary on n*k dims form an isometry.
  const Mat u = haar_unitary(n * k, rng);
  const Mat iso = u.leftCols(n);
  std::vector<Mat> kraus(k);
  for (int i = 0; i < k; ++i) kraus[i] = iso.middleRows(i * n, n);
  return kraus;
}

}  // namespace qifs
