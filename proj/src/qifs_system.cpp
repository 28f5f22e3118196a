#include "qifs/qifs_system.hpp"

#include <cmath>

namespace qifs {

namespace {

double min_singular_value(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

PureQIFS PureQIFS::make(std::vector<Mat> v, std::vector<Mat> w) {
  if (v.empty() || v.size() != w.size())
    throw std::invalid_argument("PureQIFS: v/w size mismatch");
  const Eigen::Index n = v[0].rows();
  Mat res = Mat::Zero(n, n);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].rows() != n || v[i].cols() != n || w[i].rows() != n || w[i].cols() != n)
      throw std::invalid_argument("PureQIFS: inconsistent dimensions");
    if (min_singular_value(v[i]) <= tol::invertible)
      throw std::invalid_argument("PureQIFS: V_i is not invertible");
    res += w[i].adjoint() * w[i];
  }
  if (max_abs(res - Mat::Identity(n, n)) > tol::identity_resolution)
    throw std::invalid_argument("PureQIFS: W set is not a resolution of identity");
  PureQIFS q;
  q.v = std::move(v);
  q.w = std::move(w);
  return q;
}

Vec pure_map(const Mat& v, const Vec& phi) {
  Vec out = v * phi;
  const double n = out.norm();
  if (n <= 1e-14) throw std::runtime_error("pure_map: image is numerically zero");
  return out / n;
}

double pure_probability(const Mat& w, const Vec& phi) {
  return (w * phi).squaredNorm();
}

MixedQIFS MixedQIFS::make(std::vector<MixedMap> maps, std::vector<MixedProb> probs) {
  if (maps.empty() || maps.size() != probs.size())
    throw std::invalid_argument("MixedQIFS: maps/probs size mismatch");
  MixedQIFS q;
  q.maps = std::move(maps);
  q.probs = std::move(probs);
  return q;
}

Mat mixed_map(const MixedMap& g, const Mat& rho) {
  return std::visit(
      [&rho](const auto& m) -> Mat {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConjugateBy>) {
          Mat out = m.v * rho * m.v.adjoint();
          const double tr = out.trace().real();
          if (tr <= 1e-14) throw std::runtime_error("mixed_map: vanishing trace");
          return out / tr;
        } else {  // Homothety
          return (rho + 2.0 * m.target) / 3.0;
        }
      },
      g);
}

double mixed_probability(const MixedProb& p, const Mat& rho) {
  return std::visit(
      [&rho](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantQProb>) {
          return f.p;
        } else {
          return (f.l * rho).trace().real();
        }
      },
      p);
}

Mat averaged_map(const MixedQIFS& q, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < q.k(); ++i)
    out += mixed_probability(q.probs[i], rho) * mixed_map(q.maps[i], rho);
  return out;
}

HomogeneousQIFS HomogeneousQIFS::from_kraus(std::vector<Mat> kraus) {
  HomogeneousQIFS h;
  h.channel = QuantumChannel::from_kraus(kraus);
  if (h.channel.trace_preserving != Flag::Yes)
    throw std::invalid_argument("HomogeneousQIFS: Kraus set is not trace preserving");
  h.pure = PureQIFS::make(h.channel.kraus, h.channel.kraus);
  return h;
}

MixedQIFS HomogeneousQIFS::as_mixed() const {
  std::vector<MixedMap> maps;
  std::vector<MixedProb> probs;
  for (const auto& v : channel.kraus) {
    maps.push_back(ConjugateBy{v});
    probs.push_back(OperatorProb{v.adjoint() * v});
  }
  return MixedQIFS::make(std::move(maps), std::move(probs));
}

HomogeneousQIFS atomic_qifs(double bz, double period, const Mat& pulse_integral,
                            double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("atomic_qifs: p outside [0,1]");
  if (pulse_integral.rows() != 2 || !is_hermitian(pulse_integral, 1e-10))
    throw std::invalid_argument("atomic_qifs: pulse integral must be 2x2 Hermitian");
  const Mat h0t = 0.5 * bz * period * pauli(3);
  const Mat u1 = exp_hermitian(h0t, Cx(0, -1));
  const Mat u2 = exp_hermitian(h0t + pulse_integral, Cx(0, -1));
  return HomogeneousQIFS::from_kraus(
      {std::sqrt(1.0 - p) * u1, std::sqrt(p) * u2});
}

Mat atomic_pulse_trotter(double bz, double period,
                         const std::function<Mat(double)>& v, int slices) {
  if (slices < 1) throw std::invalid_argument("atomic_pulse_trotter: slices must be >= 1");
  const Mat h0 = 0.5 * bz * pauli(3);
  const double dt = period / slices;
  Mat u = Mat::Identity(2, 2);
  for (int s = 0; s < slices; ++s) {
    const double t = (s + 0.5) * dt;
    u = exp_hermitian(h0 + v(t), Cx(0, -dt)) * u;  // later times act last
  }
  return u;
}

std::vector<Vec> qifs_trajectory(const PureQIFS& q, const Vec& phi0, int n,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> traj;
  traj.reserve(n + 1);
  std::vector<double> p(q.k());
  Vec phi = phi0 / phi0.norm();
  traj.push_back(phi);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < q.k(); ++i) p[i] = pure_probability(q.w[i], phi);
    const int i = pick_index(p.data(), q.k(), rng.uniform());
    phi = pure_map(q.v[i], phi);
    traj.push_back(phi);
  }
  return traj;
}

std::vector<Mat> qifs_trajectory(const MixedQIFS& q, const Mat& rho0, int n,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Mat> traj;
  traj.reserve(n + 1);
  std::vector<double> p(q.k());
  Mat rho = rho0;
  traj.push_back(rho);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < q.k(); ++i) p[i] = mixed_probability(q.probs[i], rho);
    const int i = pick_index(p.data(), q.k(), rng.uniform());
    rho = mixed_map(q.maps[i], rho);
    traj.push_back(rho);
  }
  return traj;
}

DensityMatrix barycenter_estimate(const std::vector<Mat>& states, int burn_in) {
  if (states.empty()) throw std::invalid_argument("barycenter_estimate: empty trajectory");
  const int start = std::min<int>(burn_in, static_cast<int>(states.size()) - 1);
  Mat acc = Mat::Zero(states[0].rows(), states[0].cols());
  for (std::size_t j = start; j < states.size(); ++j) acc += states[j];
  acc /= static_cast<double>(states.size() - start);
  return DensityMatrix(hermitize(acc));
}

DensityMatrix barycenter_estimate(const std::vector<Vec>& kets, int burn_in) {
  if (kets.empty()) throw std::invalid_argument("barycenter_estimate: empty trajectory");
  const int start = std::min<int>(burn_in, static_cast<int>(kets.size()) - 1);
  Mat acc = Mat::Zero(kets[0].size(), kets[0].size());
  for (std::size_t j = start; j < kets.size(); ++j)
    acc += kets[j] * kets[j].adjoint();
  acc /= static_cast<double>(kets.size() - start);
  return DensityMatrix(hermitize(acc));
}

}  // namespace qifs
