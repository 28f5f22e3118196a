#include "qifs/spin.hpp"

#include <cmath>

namespace qifs {

SpinBasis::SpinBasis(double spin) : j(spin) {
  const double two_j = 2.0 * spin;
  if (spin < 0.5 || std::abs(two_j - std::round(two_j)) > 1e-12)
    throw std::invalid_argument("SpinBasis: 2j must be a positive integer");
  n = static_cast<int>(std::round(two_j)) + 1;
}

AngularMomentum angular_momentum(double j) {
  const SpinBasis basis(j);
  const int n = basis.n;
  Mat jz = Mat::Zero(n, n), jp = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    jz(k, k) = m;
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; index k-1 holds m+1.
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  AngularMomentum am;
  am.jz = jz;
  am.jx = 0.5 * (jp + Mat(jp.adjoint()));
  am.jy = Cx(0, -0.5) * (jp - Mat(jp.adjoint()));
  return am;
}

Mat spin_rotation(Axis axis, double theta, double j) {
  const AngularMomentum am = angular_momentum(j);
  const Mat& gen = axis == Axis::X ? am.jx : (axis == Axis::Y ? am.jy : am.jz);
  return exp_hermitian(gen, Cx(0, theta));
}

Mat kicked_top(double alpha, double beta, double j) {
  const AngularMomentum am = angular_momentum(j);
  const int n = am.jz.rows();
  // Jz^2 is diagonal; exponentiate directly.
  Vec kick(n);
  for (int k = 0; k < n; ++k) {
    const double m = am.jz(k, k).real();
    kick[k] = std::exp(Cx(0, -beta * m * m / (2.0 * j)));
  }
  return Mat(kick.asDiagonal()) * exp_hermitian(am.jx, Cx(0, -alpha));
}

Vec spin_coherent(double j, double theta, double phi) {
  const SpinBasis basis(j);
  const int n = basis.n;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Vec v(n);
  // Amplitude at index k (m = j-k):
  //   sqrt(C(2j,k)) cos^{2j-k}(t/2) sin^k(t/2) e^{-i m phi},
  // the closed form of exp(-i phi Jz) exp(-i theta Jy) |j,j>.
  double binom = 1.0;
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    if (k > 0) binom *= (2.0 * j - k + 1.0) / k;
    const double amp =
        std::sqrt(binom) * std::pow(c, 2.0 * j - k) * std::pow(s, k);
    v[k] = amp * std::exp(Cx(0, -m * phi));
  }
  return v / v.norm();
}

std::pair<double, double> latitude_probabilities(double j, const Vec& state) {
  const AngularMomentum am = angular_momentum(j);
  const double jz_mean = (state.adjoint() * am.jz * state)(0, 0).real();
  const double p1 = 0.5 + jz_mean / (2.0 * j);
  return {p1, 1.0 - p1};
}

std::pair<double, double> latitude_probabilities(double j, const Mat& rho) {
  const AngularMomentum am = angular_momentum(j);
  const double jz_mean = (am.jz * rho).trace().real();
  const double p1 = 0.5 + jz_mean / (2.0 * j);
  return {p1, 1.0 - p1};
}

namespace {

HusimiGrid husimi_sphere_grid(const Mat& rho, double j, int nt, int np, bool parallel) {
  const SpinBasis basis(j);
  if (rho.rows() != basis.n)
    throw std::invalid_argument("husimi_sphere: dimension mismatch");
  HusimiGrid g;
  g.values.resize(nt, np);
  g.dim = basis.n;
  g.row_min = 0.0;
  g.row_max = M_PI;
  g.col_min = 0.0;
  g.col_max = 2.0 * M_PI;
  g.row_label = "theta";
  g.col_label = "phi";
  const auto eval_row = [&](int it) {
    const double theta = (it + 0.5) * M_PI / nt;
    for (int ip = 0; ip < np; ++ip) {
      const double phi = (ip + 0.5) * 2.0 * M_PI / np;
      const Vec y = spin_coherent(j, theta, phi);
      g.values(it, ip) = std::max(0.0, (y.adjoint() * rho * y)(0, 0).real());
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int it = 0; it < nt; ++it) eval_row(it);
  } else {
    for (int it = 0; it < nt; ++it) eval_row(it);
  }
  return g;
}

}  // namespace

HusimiGrid husimi_sphere(const Mat& rho, double j, int n_theta, int n_phi) {
  return husimi_sphere_grid(rho, j, n_theta, n_phi, true);
}

HusimiGrid husimi_sphere_serial(const Mat& rho, double j, int n_theta, int n_phi) {
  return husimi_sphere_grid(rho, j, n_theta, n_phi, false);
}

// HusimiGrid helpers (shared by the sphere and torus renderers).

Eigen::VectorXd HusimiGrid::col_profile() const {
  Eigen::VectorXd p = values.colwise().sum();
  const double s = p.sum();
  if (s > 0) p /= s;
  return p;
}

Eigen::VectorXd HusimiGrid::row_profile() const {
  Eigen::VectorXd p = values.rowwise().sum();
  const double s = p.sum();
  if (s > 0) p /= s;
  return p;
}

double l1_normalized_distance(const HusimiGrid& a, const HusimiGrid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("l1_normalized_distance: shape mismatch");
  const double ta = a.total(), tb = b.total();
  if (ta <= 0 || tb <= 0)
    throw std::invalid_argument("l1_normalized_distance: empty grid");
  return (a.values / ta - b.values / tb).cwiseAbs().sum();
}

double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_correlation: size mismatch");
  const double ma = a.mean(), mb = b.mean();
  const Eigen::VectorXd da = a.array() - ma, db = b.array() - mb;
  const double denom = da.norm() * db.norm();
  if (denom == 0.0) return 0.0;
  return da.dot(db) / denom;
}

}  // namespace qifs
