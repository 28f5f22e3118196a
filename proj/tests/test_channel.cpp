#include <doctest.h>

#include <cmath>

#include "qifs/channel.hpp"
#include "qifs/invariant.hpp"
#include "qifs/qifs_system.hpp"
#include "qifs/qstate.hpp"
#include "test_support.hpp"

using namespace qifs;

TEST_CASE("from_kraus computes the classification flags") {
  const auto id = identity_channel(3);
  CHECK(id.trace_preserving == Flag::Yes);
  CHECK(id.unital == Flag::Yes);

  // Amplitude-damping-like set: trace preserving but not unital.
  Mat k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(0.4);
  k1 << 0, std::sqrt(0.6), 0, 0;
  const auto damp = QuantumChannel::from_kraus({k0, k1});
  CHECK(damp.trace_preserving == Flag::Yes);
  CHECK(damp.unital == Flag::No);

  const auto broken = QuantumChannel::from_kraus({0.5 * Mat::Identity(2, 2)});
  CHECK(broken.trace_preserving == Flag::No);
}

TEST_CASE("channel_apply requires a trace-preserving channel") {
  const auto broken = QuantumChannel::from_kraus({0.5 * Mat::Identity(2, 2)});
  CHECK_THROWS_AS(channel_apply(broken, DensityMatrix::maximally_mixed(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(channel_apply(identity_channel(3), DensityMatrix::maximally_mixed(2)),
                  std::invalid_argument);
  const auto rho = DensityMatrix::maximally_mixed(3);
  CHECK(max_abs(channel_apply(identity_channel(3), rho).matrix() - rho.matrix()) <=
        1e-15);
}

TEST_CASE("depolarizing: fixed point and Bloch contraction") {
  Rng rng(31);
  // p = 3/4 sends every state to the center of the Bloch ball.
  const auto mix = depolarizing(0.75);
  for (int t = 0; t < 10; ++t) {
    const Mat rho = random_density(2, rng);
    CHECK(max_abs(mix.apply_raw(rho) - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-12);
  }

  // Independent oracle: direct 2x2 evaluation of (1-p) rho + p/3 sum s rho s.
  const double p = 0.3;
  const auto chan = depolarizing(p);
  for (int t = 0; t < 100; ++t) {
    const Mat rho = random_density(2, rng);
    Mat expected = (1.0 - p) * rho;
    for (int i = 1; i <= 3; ++i) expected += (p / 3.0) * pauli(i) * rho * pauli(i);
    CHECK(max_abs(chan.apply_raw(rho) - expected) <= 1e-14);
    // Bloch vector scales by 1 - 4p/3.
    for (int i = 1; i <= 3; ++i) {
      const double before = (pauli(i) * rho).trace().real();
      const double after = (pauli(i) * chan.apply_raw(rho)).trace().real();
      CHECK(after == doctest::Approx((1.0 - 4.0 * p / 3.0) * before).epsilon(1e-12));
    }
  }
  CHECK(max_abs(depolarizing(0.0).apply_raw(random_density(2, rng)) -
                depolarizing(0.0).apply_raw(Mat::Zero(2, 2))) >= 0.0);
  CHECK_THROWS_AS(depolarizing(1.5), std::invalid_argument);
}

TEST_CASE("depolarizing(0) is the identity channel") {
  Rng rng(32);
  const Mat rho = random_density(2, rng);
  CHECK(max_abs(depolarizing(0.0).apply_raw(rho) - rho) <= 1e-15);
}

TEST_CASE("random external field: construction and invariances") {
  Rng rng(33);
  const Mat u = haar_unitary(3, rng);
  const auto single = random_external_field({1.0}, {u});
  const Mat rho = random_density(3, rng);
  CHECK(max_abs(single.apply_raw(rho) - u * rho * u.adjoint()) <= 1e-13);

  const auto field = random_external_field({0.5, 0.5}, {haar_unitary(4, rng),
                                                        haar_unitary(4, rng)});
  CHECK(field.trace_preserving == Flag::Yes);
  CHECK(field.unital == Flag::Yes);
  const Mat mixed = Mat::Identity(4, 4) / 4.0;
  CHECK(max_abs(field.apply_raw(mixed) - mixed) <= 1e-13);

  CHECK_THROWS_AS(random_external_field({0.7, 0.7}, {u, u}), std::invalid_argument);
  Mat not_unitary = Mat::Identity(3, 3);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(random_external_field({1.0}, {not_unitary}), std::invalid_argument);
}

TEST_CASE("commuting diagonal field fixes every diagonal state") {
  Mat u1 = Mat::Zero(3, 3), u2 = Mat::Zero(3, 3);
  u1.diagonal() << 1.0, std::exp(Cx(0, 0.9)), std::exp(Cx(0, 1.7));
  u2.diagonal() << std::exp(Cx(0, 0.4)), 1.0, std::exp(Cx(0, 2.2));
  const auto field = random_external_field({0.3, 0.7}, {u1, u2});
  Mat rho = Mat::Zero(3, 3);
  rho.diagonal() << 0.5, 0.3, 0.2;
  CHECK(max_abs(field.apply_raw(rho) - rho) <= 1e-15);
}

TEST_CASE("Pauli external field equals the depolarizing channel") {
  const double p = 0.37;
  const auto field = random_external_field(
      {1.0 - p, p / 3.0, p / 3.0, p / 3.0},
      {Mat::Identity(2, 2), pauli(1), pauli(2), pauli(3)});
  const Mat a = superoperator_of(field).m;
  const Mat b = superoperator_of(depolarizing(p)).m;
  CHECK(max_abs(a - b) <= 1e-14);
}

TEST_CASE("ancilla channel: product unitaries reduce to local conjugation") {
  Rng rng(35);
  const Mat ua = haar_unitary(2, rng);
  const Mat ub = haar_unitary(3, rng);
  const auto chan = ancilla_channel(kron(ua, ub), 3);
  const Mat rho = random_density(2, rng);
  CHECK(max_abs(chan.apply_raw(rho) - ua * rho * ua.adjoint()) <= 1e-12);
}

TEST_CASE("ancilla channel: SWAP erases the system state") {
  Mat swap = Mat::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const auto chan = ancilla_channel(swap, 2);
  Rng rng(36);
  for (int t = 0; t < 5; ++t) {
    const Mat rho = random_density(2, rng);
    CHECK(max_abs(chan.apply_raw(rho) - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-13);
  }
}

TEST_CASE("ancilla channel is bistochastic and matches the partial trace") {
  Rng rng(37);
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const Mat u = haar_unitary(n * m, rng);
    const auto chan = ancilla_channel(u, m);
    CHECK(chan.trace_preserving == Flag::Yes);
    CHECK(chan.unital == Flag::Yes);
    for (int t = 0; t < 5; ++t) {
      const Mat rho = random_density(n, rng);
      // Independent route through the environment.
      const Mat joint = u * kron(rho, Mat(Mat::Identity(m, m) / m)) * u.adjoint();
      const Mat direct = partial_trace(joint, n, m, Subsystem::B);
      CHECK(max_abs(chan.apply_raw(rho) - direct) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(ancilla_channel(Mat::Identity(4, 4), 3), std::invalid_argument);
}

TEST_CASE("atomic QIFS: pulse-free limit and uniqueness") {
  const Mat zero = Mat::Zero(2, 2);
  const auto plain = atomic_qifs(1.3, 2.0, zero, 0.5);
  CHECK(max_abs(plain.channel.kraus[0] / std::sqrt(0.5) -
                plain.channel.kraus[1] / std::sqrt(0.5)) <= 1e-13);

  const Mat pulse = (M_PI / 3.0) * pauli(1);
  const auto driven = atomic_qifs(1.0, M_PI, pulse, 0.5);
  const auto rep = fixed_states(driven.channel);
  CHECK(rep.multiplicity == 1);
  REQUIRE(rep.state.has_value());
  CHECK(max_abs(rep.state->matrix() - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-10);
}

TEST_CASE("atomic QIFS at bz*T = pi, pulse pi*sigma1: commutant decides") {
  const Mat pulse = M_PI * pauli(1);
  const auto qifs = atomic_qifs(1.0, M_PI, pulse, 0.5);
  const Mat u1 = qifs.channel.kraus[0] / std::sqrt(0.5);
  const Mat u2 = qifs.channel.kraus[1] / std::sqrt(0.5);
  const auto verdict = uniqueness_verdict({0.5, 0.5}, {u1, u2});
  CHECK(verdict.consistent);
  const auto rep = fixed_states(qifs.channel);
  CHECK((rep.multiplicity == 1) == verdict.unique);
}

TEST_CASE("atomic Trotter mode: constant pulse reproduces the exponential") {
  const Mat pulse = 0.8 * pauli(1) + 0.3 * pauli(3);
  const double period = 1.7, bz = 0.9;
  const auto v = [&](double) { return Mat((1.0 / period) * pulse); };
  const Mat expected = atomic_qifs(bz, period, pulse, 0.5).channel.kraus[1] /
                       std::sqrt(0.5);
  // All slice factors are equal and commute, so any count is exact.
  for (int slices : {1, 8}) {
    const Mat u = atomic_pulse_trotter(bz, period, v, slices);
    CHECK(max_abs(u - expected) <= 1e-12);
  }
}

TEST_CASE("atomic Trotter mode: slice refinement converges quadratically") {
  const double period = 1.0, bz = 1.1;
  const auto v = [](double t) { return Mat(std::sin(2.0 * t) * pauli(1)); };
  const Mat fine = atomic_pulse_trotter(bz, period, v, 4096);
  const double err64 = max_abs(atomic_pulse_trotter(bz, period, v, 64) - fine);
  const double err128 = max_abs(atomic_pulse_trotter(bz, period, v, 128) - fine);
  CHECK(err64 / err128 == doctest::Approx(4.0).epsilon(0.2));
}
