#pragma once

#include <vector>

#include "qifs/qstate.hpp"

namespace qifs {

enum class Flag { Yes, No, Unknown };

/// A finite Kraus set with computed classification flags.
struct QuantumChannel {
  std::vector<Mat> kraus;
  Flag trace_preserving = Flag::Unknown;
  Flag unital = Flag::Unknown;

  int dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }
  static QuantumChannel from_kraus(std::vector<Mat> kraus);

  /// Sum_j V_j rho V_j^dag on a raw matrix (no validation).
  Mat apply_raw(const Mat& rho) const;
};

/// Channel application with the DensityMatrix contract; requires a
/// trace-preserving channel.
DensityMatrix channel_apply(const QuantumChannel& chan, const DensityMatrix& rho);

QuantumChannel identity_channel(int n);

/// Kraus set {sqrt(p_i) U_i}; trace preserving and unital by construction.
QuantumChannel random_external_field(const std::vector<double>& probs,
                                     const std::vector<Mat>& unitaries);

/// Qubit depolarizing channel with error probability p.
QuantumChannel depolarizing(double p);

/// Channel induced by a joint unitary on H_N (x) H_m with the environment in
/// the maximally mixed state; Kraus set K_{mu,nu} = (1/sqrt m) <mu|U|nu>
/// blocks. Bistochastic for every unitary U.
QuantumChannel ancilla_channel(const Mat& u, int env_dim);

// Pauli matrices (qubit helpers used across the examples).
Mat pauli(int i);  // i = 1,2,3

}  // namespace qifs
