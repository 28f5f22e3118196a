#pragma once

#include "qifs/linalg.hpp"

namespace qifs {

/// State vector normalized to unit Euclidean norm (tolerance 1e-12).
class Ket {
 public:
  explicit Ket(Vec amplitudes);
  static Ket normalized(Vec amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vec& amps() const { return amps_; }

 private:
  Vec amps_;
};

/// A Ket modulo global phase. Equality is |<a|b>| = 1 within tolerance;
/// amplitudes are never compared directly.
class PureState {
 public:
  explicit PureState(Ket k) : ket_(std::move(k)) {}
  int dim() const { return ket_.dim(); }
  const Ket& ket() const { return ket_; }
  Mat projector() const;

 private:
  Ket ket_;
};

bool approx_equal(const PureState& a, const PureState& b, double eps = 1e-10);

/// Hermitian, PSD, unit-trace matrix. Construction validates all three;
/// eigenvalues within -1e-10 of zero are clipped, worse violations throw.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat& m);
  static DensityMatrix pure(const Ket& k);
  static DensityMatrix maximally_mixed(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }

 private:
  Mat m_;
};

// Metrics. Mat overloads are the raw computations; the DensityMatrix
// wrappers check dimensions first.
double fubini_study(const PureState& a, const PureState& b);
double hs_distance(const Mat& a, const Mat& b);
double hs_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const Mat& a, const Mat& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double bures_distance(const Mat& a, const Mat& b);
double bures_distance(const DensityMatrix& a, const DensityMatrix& b);

/// -sum lambda ln lambda over eigenvalues above 1e-12; natural log.
double von_neumann_entropy(const Mat& rho);
double von_neumann_entropy(const DensityMatrix& rho);

enum class Subsystem { A, B };

/// Reduced state of a bipartite rho on dim_a * dim_b (A tensor B ordering,
/// row index = a*dim_b + b), tracing out the named subsystem.
Mat partial_trace(const Mat& joint, int dim_a, int dim_b, Subsystem traced);
DensityMatrix partial_trace(const DensityMatrix& joint, int dim_a, int dim_b,
                            Subsystem traced);

}  // namespace qifs
