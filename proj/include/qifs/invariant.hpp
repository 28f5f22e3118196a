#pragma once

#include <functional>
#include <optional>

#include "qifs/channel.hpp"
#include "qifs/rng.hpp"

namespace qifs {

/// N^2 x N^2 matrix acting on row-major vectorized density matrices:
/// M = sum_j kron(V_j, conj(V_j)), so that M vec(rho) = vec(Lambda(rho)).
struct Superoperator {
  Mat m;
  int dim = 0;  // Hilbert-space dimension N

  Vec apply(const Vec& v) const { return m * v; }
};

Superoperator superoperator_of(const QuantumChannel& chan);
/// Reference implementation without OpenMP, kept for kernel testing.
Superoperator superoperator_of_serial(const QuantumChannel& chan);

struct FixedStateReport {
  int multiplicity = 0;            // eigenvalues within tol of 1
  std::vector<Mat> hermitian_basis;  // real-linear basis of fixed Hermitian matrices
  std::optional<DensityMatrix> state;  // distinguished invariant state
  bool unique = false;
  double residual = 0.0;  // max |Lambda(rho) - rho| for the reported state
  std::vector<Cx> eigenvalues;
};

/// Spectral fixed-point analysis of a trace-preserving channel: eigenvalue-1
/// multiplicity, a Hermitian basis of the fixed space (null space of M - 1),
/// and a distinguished invariant state (projection of 1/N onto the fixed
/// space, PSD-projected).
FixedStateReport fixed_states(const QuantumChannel& chan, double tol = tol::fixed_point);

using StateMap = std::function<Mat(const Mat&)>;

struct PowerIterationResult {
  DensityMatrix state;
  int steps = 0;
  bool converged = false;
};

/// Iterates rho <- step(rho) until D_tr(step(rho), rho) < tol. Works for any
/// map of density matrices (linear channel or a QIFS-averaged map).
PowerIterationResult power_iteration(const StateMap& step, const DensityMatrix& rho0,
                                     int max_steps = 10000, double tol = 1e-12);
PowerIterationResult power_iteration(const QuantumChannel& chan,
                                     const DensityMatrix& rho0,
                                     int max_steps = 10000, double tol = 1e-12);

struct CommutantReport {
  int dimension = 0;
  bool reducible = false;                 // dimension > 1
  std::vector<std::vector<int>> blocks;   // partition of basis indices (transformed basis)
  Mat transform;                          // unitary whose columns order the blocks
  std::vector<Mat> basis;                 // commutant basis elements
};

/// Solves {U_i X = X U_i for all i} by a null-space computation on the
/// stacked kron(U_i, 1) - kron(1, U_i^T) blocks. dimension == 1 iff the
/// family is irreducible (not common block-diagonal). For reducible families
/// the eigenspaces of a random Hermitian commutant element give the blocks.
CommutantReport commutant(const std::vector<Mat>& unitaries, double tol = tol::commutant,
                          std::uint64_t seed = 99);

struct UniquenessVerdict {
  bool unique = false;
  int commutant_dimension = 0;
  int fixed_multiplicity = 0;  // cross-check on the induced external-field channel
  bool consistent = false;     // verdicts agree
};

/// Proposition-2 criterion: with all p_i > 0 the maximally mixed state is the
/// unique invariant state iff the commutant is trivial. Cross-checked against
/// the fixed-point multiplicity of the induced channel.
UniquenessVerdict uniqueness_verdict(const std::vector<double>& probs,
                                     const std::vector<Mat>& unitaries);

struct Lemma1Report {
  bool precondition_met = false;  // upper block vanishes within tol
  double upper_max = 0.0;         // max |U_nm|, n in A, m in B
  double opposite_max = 0.0;      // max |U_nm|, n in B, m in A
  double bound = 0.0;             // sqrt(N) * tol
  bool holds = false;
};

/// Unitarity forces the opposite off-diagonal block to vanish whenever one
/// block does; reports the measured magnitudes.
Lemma1Report lemma1_validate(const Mat& u, const std::vector<int>& subset_a,
                             double tol = 1e-10);

/// Appendix construction: block-diagonal density matrix with weight sigma_j
/// spread uniformly over block j (sizes alpha_j, weights sum to 1). Expressed
/// in the basis given by `transform` (identity when empty).
Mat direct_sum_state(const std::vector<int>& block_sizes,
                     const std::vector<double>& sigma, const Mat& transform = Mat());

}  // namespace qifs
