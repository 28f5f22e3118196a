#include "qifs/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qifs {

namespace {

// Gram-Schmidt over the real-linear space of Hermitian matrices with the
// Hilbert-Schmidt inner product. Returns an orthonormal independent subset.
std::vector<Mat> orthonormalize_hermitian(const std::vector<Mat>& cands,
                                          int target_dim) {
  std::vector<Mat> basis;
  for (const auto& c : cands) {
    Mat r = c;
    for (const auto& b : basis) {
      const double coeff = (b.adjoint() * r).trace().real();
      r -= coeff * b;
    }
    const double n = r.norm();
    if (n > 1e-9) basis.push_back(r / n);
    if (static_cast<int>(basis.size()) == target_dim) break;
  }
  return basis;
}

}  // namespace

Superoperator superoperator_of_serial(const QuantumChannel& chan) {
  const int n = chan.dim();
  Superoperator s;
  s.dim = n;
  s.m = Mat::Zero(n * n, n * n);
  for (const auto& v : chan.kraus) s.m += kron(v, v.conjugate());
  return s;
}

Superoperator superoperator_of(const QuantumChannel& chan) {
  const int n = chan.dim();
  Superoperator s;
  s.dim = n;
  s.m = Mat::Zero(n * n, n * n);
  // kron(V, conj(V)) row block i spans rows [i*n, (i+1)*n); independent per i.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (const auto& v : chan.kraus)
      for (int j = 0; j < n; ++j)
        s.m.block(i * n, j * n, n, n) += v(i, j) * v.conjugate();
  }
  return s;
}

FixedStateReport fixed_states(const QuantumChannel& chan, double tol) {
  if (chan.trace_preserving != Flag::Yes)
    throw std::invalid_argument("fixed_states: channel is not trace preserving");
  const int n = chan.dim();
  const Superoperator sop = superoperator_of(chan);

  FixedStateReport rep;
  Eigen::ComplexEigenSolver<Mat> es(sop.m, /*computeEigenvectors=*/false);
  rep.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  for (const Cx& lam : rep.eigenvalues)
    if (std::abs(lam - Cx(1.0, 0.0)) < tol) ++rep.multiplicity;
  if (rep.multiplicity == 0)
    throw std::runtime_error(
        "fixed_states: no eigenvalue near 1 for a trace-preserving channel");

  // The eigenvalue-1 eigenspace is the null space of (M - 1); the SVD route
  // is better conditioned than eigenvectors for degenerate clusters.
  Eigen::JacobiSVD<Mat> svd(sop.m - Mat::Identity(n * n, n * n),
                            Eigen::ComputeFullV);
  std::vector<Vec> null_basis;
  for (int i = 0; i < n * n; ++i)
    if (svd.singularValues()[i] < tol) null_basis.push_back(svd.matrixV().col(i));

  // The fixed space of a Kraus map is closed under dagger, so hermitized
  // combinations span it over the reals.
  std::vector<Mat> cands;
  for (const auto& v : null_basis) {
    const Mat x = unvec_rm(v, n);
    cands.push_back(hermitize(x));
    cands.push_back(hermitize(Cx(0, -1) * x));
  }
  rep.hermitian_basis =
      orthonormalize_hermitian(cands, static_cast<int>(null_basis.size()));

  // Distinguished state: HS projection of 1/N onto the fixed space.
  Vec w = Vec::Zero(n * n);
  const Vec id_vec = vec_rm(Mat::Identity(n, n) / static_cast<double>(n));
  for (const auto& v : null_basis) w += v * v.dot(id_vec);
  Mat rho = hermitize(unvec_rm(w, n));
  const double tr = rho.trace().real();
  if (std::abs(tr) > 1e-12) {
    rho = project_to_density(rho / tr);
    rep.state = DensityMatrix(rho);
    rep.residual = max_abs(chan.apply_raw(rho) - rho);
  }
  rep.unique = rep.multiplicity == 1;
  return rep;
}

PowerIterationResult power_iteration(const StateMap& step, const DensityMatrix& rho0,
                                     int max_steps, double tol) {
  Mat rho = rho0.matrix();
  for (int s = 1; s <= max_steps; ++s) {
    const Mat next = step(rho);
    const double d = trace_distance(next, rho);
    rho = next;
    if (d < tol)
      return {DensityMatrix(hermitize(rho)), s, true};
  }
  return {DensityMatrix(project_to_density(rho)), max_steps, false};
}

PowerIterationResult power_iteration(const QuantumChannel& chan,
                                     const DensityMatrix& rho0, int max_steps,
                                     double tol) {
  return power_iteration([&chan](const Mat& r) { return chan.apply_raw(r); },
                         rho0, max_steps, tol);
}

CommutantReport commutant(const std::vector<Mat>& unitaries, double tol,
                          std::uint64_t seed) {
  if (unitaries.empty()) throw std::invalid_argument("commutant: empty family");
  const int n = static_cast<int>(unitaries[0].rows());
  for (const auto& u : unitaries)
    if (!is_unitary(u)) throw std::invalid_argument("commutant: input is not unitary");

  const Mat id = Mat::Identity(n, n);
  Mat stacked(static_cast<Eigen::Index>(unitaries.size()) * n * n, n * n);
  for (std::size_t i = 0; i < unitaries.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * n * n, n * n) =
        kron(unitaries[i], id) - kron(id, unitaries[i].transpose());

  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  CommutantReport rep;
  for (int i = 0; i < n * n; ++i) {
    if (svd.singularValues()[i] < tol) {
      rep.basis.push_back(unvec_rm(svd.matrixV().col(i), n));
      ++rep.dimension;
    }
  }
  rep.reducible = rep.dimension > 1;
  if (!rep.reducible) {
    rep.blocks = {std::vector<int>(n)};
    std::iota(rep.blocks[0].begin(), rep.blocks[0].end(), 0);
    rep.transform = id;
    return rep;
  }

  // Block extraction: eigenspaces of a random Hermitian commutant element.
  // Resample when a gap between would-be clusters is too small.
  Rng rng(seed);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Mat h = Mat::Zero(n, n);
    for (const auto& b : rep.basis) h += (2.0 * rng.uniform() - 1.0) * b;
    h = hermitize(h);
    if (h.norm() < 1e-12) continue;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Eigen::VectorXd lam = es.eigenvalues();
    std::vector<std::vector<int>> blocks{{0}};
    bool degenerate_gap = false;
    for (int i = 1; i < n; ++i) {
      const double gap = lam[i] - lam[i - 1];
      if (gap > 1e-6) {
        blocks.emplace_back();
      } else if (gap > 1e-9) {
        degenerate_gap = true;  // ambiguous cluster boundary
        break;
      }
      blocks.back().push_back(i);
    }
    if (degenerate_gap || blocks.size() < 2) continue;
    rep.blocks = std::move(blocks);
    rep.transform = es.eigenvectors();
    return rep;
  }
  // Fall back to a single block; the dimension verdict still stands.
  rep.blocks = {std::vector<int>(n)};
  std::iota(rep.blocks[0].begin(), rep.blocks[0].end(), 0);
  rep.transform = id;
  return rep;
}

UniquenessVerdict uniqueness_verdict(const std::vector<double>& probs,
                                     const std::vector<Mat>& unitaries) {
  for (double p : probs)
    if (p <= 0.0)
      throw std::invalid_argument("uniqueness_verdict: probabilities must be positive");
  UniquenessVerdict v;
  const CommutantReport com = commutant(unitaries);
  v.commutant_dimension = com.dimension;
  v.unique = com.dimension == 1;
  const FixedStateReport fix = fixed_states(random_external_field(probs, unitaries));
  v.fixed_multiplicity = fix.multiplicity;
  v.consistent = (fix.multiplicity == 1) == v.unique;
  return v;
}

Lemma1Report lemma1_validate(const Mat& u, const std::vector<int>& subset_a,
                             double tol) {
  if (!is_unitary(u)) throw std::invalid_argument("lemma1_validate: U is not unitary");
  const int n = static_cast<int>(u.rows());
  std::vector<char> in_a(n, 0);
  for (int i : subset_a) {
    if (i < 0 || i >= n) throw std::invalid_argument("lemma1_validate: index out of range");
    in_a[i] = 1;
  }
  const int na = static_cast<int>(subset_a.size());
  if (na == 0 || na == n)
    throw std::invalid_argument("lemma1_validate: A must be a nonempty proper subset");

  Lemma1Report rep;
  rep.bound = std::sqrt(static_cast<double>(n)) * tol;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (in_a[r] && !in_a[c]) rep.upper_max = std::max(rep.upper_max, std::abs(u(r, c)));
      if (!in_a[r] && in_a[c])
        rep.opposite_max = std::max(rep.opposite_max, std::abs(u(r, c)));
    }
  rep.precondition_met = rep.upper_max <= tol;
  rep.holds = rep.precondition_met && rep.opposite_max <= rep.bound;
  return rep;
}

Mat direct_sum_state(const std::vector<int>& block_sizes,
                     const std::vector<double>& sigma, const Mat& transform) {
  if (block_sizes.size() != sigma.size())
    throw std::invalid_argument("direct_sum_state: sizes/weights mismatch");
  const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  Mat rho = Mat::Zero(n, n);
  int offset = 0;
  for (std::size_t j = 0; j < block_sizes.size(); ++j) {
    for (int i = 0; i < block_sizes[j]; ++i)
      rho(offset + i, offset + i) = sigma[j] / block_sizes[j];
    offset += block_sizes[j];
  }
  if (transform.size() > 0) rho = transform * rho * transform.adjoint();
  return rho;
}

}  // namespace qifs
