#include "qifs/channel.hpp"

#include <cmath>

namespace qifs {

Mat pauli(int i) {
  Mat s(2, 2);
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Cx(0, -1), Cx(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Mat> kraus) {
  if (kraus.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus set");
  const Eigen::Index n = kraus[0].rows();
  for (const auto& v : kraus)
    if (v.rows() != n || v.cols() != n)
      throw std::invalid_argument("QuantumChannel: Kraus operators must be square, same size");
  QuantumChannel c;
  c.kraus = std::move(kraus);
  Mat vdv = Mat::Zero(n, n), vvd = Mat::Zero(n, n);
  for (const auto& v : c.kraus) {
    vdv += v.adjoint() * v;
    vvd += v * v.adjoint();
  }
  const Mat id = Mat::Identity(n, n);
  c.trace_preserving =
      max_abs(vdv - id) <= tol::identity_resolution ? Flag::Yes : Flag::No;
  c.unital = max_abs(vvd - id) <= tol::identity_resolution ? Flag::Yes : Flag::No;
  return c;
}

Mat QuantumChannel::apply_raw(const Mat& rho) const {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& v : kraus) out += v * rho * v.adjoint();
  return out;
}

DensityMatrix channel_apply(const QuantumChannel& chan, const DensityMatrix& rho) {
  if (chan.trace_preserving != Flag::Yes)
    throw std::invalid_argument("channel_apply: channel is not trace preserving");
  if (chan.dim() != rho.dim())
    throw std::invalid_argument("channel_apply: dimension mismatch");
  return DensityMatrix(chan.apply_raw(rho.matrix()));
}

QuantumChannel identity_channel(int n) {
  return QuantumChannel::from_kraus({Mat::Identity(n, n)});
}

QuantumChannel random_external_field(const std::vector<double>& probs,
                                     const std::vector<Mat>& unitaries) {
  if (probs.size() != unitaries.size() || probs.empty())
    throw std::invalid_argument("random_external_field: probs/unitaries size mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("random_external_field: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("random_external_field: probabilities do not sum to 1");
  std::vector<Mat> kraus;
  kraus.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!is_unitary(unitaries[i]))
      throw std::invalid_argument("random_external_field: operator is not unitary");
    kraus.push_back(std::sqrt(probs[i]) * unitaries[i]);
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p outside [0,1]");
  std::vector<Mat> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(2, 2));
  for (int i = 1; i <= 3; ++i) kraus.push_back(std::sqrt(p / 3.0) * pauli(i));
  return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel ancilla_channel(const Mat& u, int env_dim) {
  if (!is_unitary(u)) throw std::invalid_argument("ancilla_channel: U is not unitary");
  if (env_dim < 1 || u.rows() % env_dim != 0)
    throw std::invalid_argument("ancilla_channel: dimension does not factor");
  const int n = static_cast<int>(u.rows()) / env_dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(env_dim));
  std::vector<Mat> kraus;
  kraus.reserve(env_dim * env_dim);
  for (int mu = 0; mu < env_dim; ++mu)
    for (int nu = 0; nu < env_dim; ++nu) {
      Mat k(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) k(a, b) = u(a * env_dim + mu, b * env_dim + nu);
      kraus.push_back(scale * k);
    }
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace qifs
