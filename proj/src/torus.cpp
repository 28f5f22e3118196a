#include "qifs/torus.hpp"

#include <cmath>

namespace qifs {

TorusBasis::TorusBasis(int l_) : l(l_), n(3 * l_) {
  if (l_ < 1) throw std::invalid_argument("TorusBasis: L must be >= 1");
}

Mat dft_matrix(int n) {
  Mat w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      w(l, j) = scale * std::exp(Cx(0, -2.0 * M_PI * l * j / n));
  return w;
}

Mat cyclic_shift(int n) {
  Mat x = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

std::pair<Mat, Mat> shift_operators(int n) {
  const Mat x = cyclic_shift(n);
  const Mat w = dft_matrix(n);
  return {x, w * x * w.adjoint()};
}

namespace {

// A rho A^dag for A = sum_{i<L, m<3} |offset+i><3i+m|: the (i,j) entry of the
// L x L target block is the sum of the 3x3 source block at (3i, 3j).
Mat contract_thirds(const Mat& rho, int l, int offset) {
  const int n = 3 * l;
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      Cx s = 0.0;
      for (int m = 0; m < 3; ++m)
        for (int q = 0; q < 3; ++q) s += rho(3 * i + m, 3 * j + q);
      out(offset + i, offset + j) = s;
    }
  return out;
}

}  // namespace

TartanOps tartan_operators(int l) {
  const TorusBasis basis(l);
  const int n = basis.n;
  TartanOps ops;
  ops.l = l;
  ops.n = n;
  ops.a1 = Mat::Zero(n, n);
  ops.a2 = Mat::Zero(n, n);
  for (int i = 0; i < l; ++i)
    for (int m = 0; m < 3; ++m) {
      ops.a1(i, 3 * i + m) = 1.0;
      ops.a2(2 * l + i, 3 * i + m) = 1.0;
    }
  ops.w = dft_matrix(n);
  ops.a3 = ops.w * ops.a1 * ops.w.adjoint();
  ops.a4 = ops.w * ops.a2 * ops.w.adjoint();
  return ops;
}

Mat tartan_apply_linear(const TartanOps& ops, const Mat& rho) {
  const Mat rho_p = ops.w.adjoint() * rho * ops.w;  // momentum representation
  Mat out = contract_thirds(rho, ops.l, 0) + contract_thirds(rho, ops.l, 2 * ops.l);
  const Mat mom =
      contract_thirds(rho_p, ops.l, 0) + contract_thirds(rho_p, ops.l, 2 * ops.l);
  out += ops.w * mom * ops.w.adjoint();
  return 0.25 * out;
}

Mat tartan_apply_normalized(const TartanOps& ops, const Mat& rho) {
  const Mat rho_p = ops.w.adjoint() * rho * ops.w;
  Mat terms[4];
  terms[0] = contract_thirds(rho, ops.l, 0);
  terms[1] = contract_thirds(rho, ops.l, 2 * ops.l);
  terms[2] = ops.w * contract_thirds(rho_p, ops.l, 0) * ops.w.adjoint();
  terms[3] = ops.w * contract_thirds(rho_p, ops.l, 2 * ops.l) * ops.w.adjoint();
  Mat out = Mat::Zero(ops.n, ops.n);
  for (auto& t : terms) {
    const double tr = t.trace().real();
    if (tr <= 1e-14)
      throw std::runtime_error("tartan_apply_normalized: vanishing branch trace");
    out += t / tr;
  }
  return 0.25 * out;
}

namespace {

TartanInvariantResult tartan_linear_dense(const TartanOps& ops, double tol) {
  const int n = ops.n;
  Mat sop = Mat::Zero(n * n, n * n);
  for (const Mat& a : ops.all()) sop += kron(a, a.conjugate());
  sop *= 0.25;
  Eigen::ComplexEigenSolver<Mat> es(sop);
  int lead = 0;
  for (int i = 1; i < n * n; ++i)
    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[lead])) lead = i;
  Mat x = unvec_rm(es.eigenvectors().col(lead), n);
  // Remove the arbitrary eigenvector phase before hermitizing.
  const Cx tr = x.trace();
  if (std::abs(tr) > 1e-12) x *= std::conj(tr) / std::abs(tr);
  const Mat rho = project_to_density(hermitize(x));
  TartanInvariantResult res{DensityMatrix(rho), TartanMode::LinearSpectral};
  res.leading_eigenvalue = std::abs(es.eigenvalues()[lead]);
  const Mat image = tartan_apply_linear(ops, rho);
  res.residual = max_abs(image / image.trace().real() - rho);
  res.steps = 0;
  res.converged = res.residual <= std::max(tol, 1e-8);
  return res;
}

TartanInvariantResult tartan_linear_power(const TartanOps& ops, double tol,
                                          int max_steps) {
  const int n = ops.n;
  Mat rho = Mat::Identity(n, n) / n;
  double lambda = 0.0;
  int steps = 0;
  bool converged = false;
  for (int s = 1; s <= max_steps; ++s) {
    Mat next = tartan_apply_linear(ops, rho);
    lambda = next.trace().real();
    next /= lambda;
    const double diff = max_abs(next - rho);
    rho = next;
    steps = s;
    if (diff < tol) {
      converged = true;
      break;
    }
  }
  rho = project_to_density(rho);
  TartanInvariantResult res{DensityMatrix(rho), TartanMode::LinearSpectral};
  res.leading_eigenvalue = lambda;
  const Mat image = tartan_apply_linear(ops, rho);
  res.residual = max_abs(image / image.trace().real() - rho);
  res.steps = steps;
  res.converged = converged;
  return res;
}

}  // namespace

TartanInvariantResult tartan_invariant(const TartanOps& ops, TartanMode mode,
                                       double tol, int max_steps) {
  if (mode == TartanMode::LinearSpectral) {
    // Dense eigensolve up to superoperator side 1024, power iteration beyond.
    if (ops.n <= 32) return tartan_linear_dense(ops, tol);
    return tartan_linear_power(ops, tol, max_steps);
  }
  // Nonlinear mode: damped iteration of the per-map-normalized average.
  const int n = ops.n;
  Mat rho = Mat::Identity(n, n) / n;
  const double eta = 0.5;
  int steps = 0;
  bool converged = false;
  for (int s = 1; s <= max_steps; ++s) {
    const Mat next = (1.0 - eta) * rho + eta * tartan_apply_normalized(ops, rho);
    const double diff = max_abs(next - rho);
    rho = next;
    steps = s;
    if (diff < tol * eta) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error("tartan_invariant: nonlinear iteration did not converge");
  rho = project_to_density(rho);
  TartanInvariantResult res{DensityMatrix(rho), TartanMode::NonlinearNormalized};
  res.residual = max_abs(tartan_apply_normalized(ops, rho) - rho);
  res.steps = steps;
  res.converged = converged;
  return res;
}

Vec reference_state(int n) {
  Vec kappa(n);
  for (int i = 0; i < n; ++i) {
    const double d = i - 0.5 * n;
    kappa[i] = std::exp(-M_PI * d * d / n) * std::exp(Cx(0, -M_PI * i));
  }
  return kappa / kappa.norm();
}

Vec coherent_torus(double q, double p, int n) {
  if (q < 0.0 || q >= 1.0 || p < 0.0 || p >= 1.0)
    throw std::invalid_argument("coherent_torus: q, p must lie in [0,1)");
  const long a = std::lround(n * q - 0.5 * n);
  const long b = std::lround(n * p - 0.5 * n);
  const Vec kappa = reference_state(n);
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    const int src = static_cast<int>(((i - a) % n + n) % n);
    // Y^b is diagonal in position with phases exp(-2 pi i j b / N).
    out[i] = kappa[src] * std::exp(Cx(0, -2.0 * M_PI * i * b / n));
  }
  return out;
}

namespace {

HusimiGrid husimi_torus_grid(const Mat& rho, int grid, bool parallel) {
  const int n = static_cast<int>(rho.rows());
  HusimiGrid g;
  g.values.resize(grid, grid);
  g.dim = n;
  g.row_label = "p";
  g.col_label = "q";
  const auto eval_row = [&](int lp) {
    const double p = (lp + 0.5) / grid;
    for (int kq = 0; kq < grid; ++kq) {
      const double q = (kq + 0.5) / grid;
      const Vec y = coherent_torus(q, p, n);
      g.values(lp, kq) =
          std::max(0.0, (y.adjoint() * rho * y)(0, 0).real()) / (2.0 * M_PI);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int lp = 0; lp < grid; ++lp) eval_row(lp);
  } else {
    for (int lp = 0; lp < grid; ++lp) eval_row(lp);
  }
  return g;
}

}  // namespace

HusimiGrid husimi_torus(const Mat& rho, int grid) {
  return husimi_torus_grid(rho, grid, true);
}

HusimiGrid husimi_torus_serial(const Mat& rho, int grid) {
  return husimi_torus_grid(rho, grid, false);
}

double tartan_excluded_mass(const HusimiGrid& grid) {
  const int m = grid.rows();
  double excluded = 0.0;
  const double total = grid.total();
  for (int lp = 0; lp < m; ++lp)
    for (int kq = 0; kq < grid.cols(); ++kq) {
      const double p = (lp + 0.5) / m;
      const double q = (kq + 0.5) / grid.cols();
      const bool mid_p = p > 1.0 / 3.0 && p < 2.0 / 3.0;
      const bool mid_q = q > 1.0 / 3.0 && q < 2.0 / 3.0;
      if (mid_p || mid_q) excluded += grid.values(lp, kq);
    }
  return total > 0 ? excluded / total : 0.0;
}

}  // namespace qifs
