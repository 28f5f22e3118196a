#include <doctest.h>

#include <cmath>

#include "qifs/qifs_system.hpp"
#include "qifs/qstate.hpp"
#include "test_support.hpp"

using namespace qifs;

namespace {

MixedQIFS homothety_qifs() {
  Mat rho1 = Mat::Zero(2, 2), rho2 = Mat::Zero(2, 2);
  rho1(0, 0) = 1.0;
  rho2(1, 1) = 1.0;
  return MixedQIFS::make({Homothety{rho1}, Homothety{rho2}},
                         {ConstantQProb{0.5}, ConstantQProb{0.5}});
}

}  // namespace

TEST_CASE("PureQIFS validation") {
  Rng rng(41);
  const Mat u1 = haar_unitary(2, rng), u2 = haar_unitary(2, rng);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(PureQIFS::make({u1, u2}, {r * u1, r * u2}));

  // W set failing the resolution of identity.
  CHECK_THROWS_AS(PureQIFS::make({u1, u2}, {u1, u2}), std::invalid_argument);
  // Singular V.
  Mat sing = Mat::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(PureQIFS::make({sing, u2}, {r * u1, r * u2}),
                  std::invalid_argument);
}

TEST_CASE("pure_map fixed examples") {
  Vec phi(2);
  phi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK((pure_map(Mat::Identity(2, 2), phi) - phi).norm() <= 1e-15);

  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 2.0;
  const Vec out = pure_map(v, phi);
  Vec expected(2);
  expected << 1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0);
  CHECK((out - expected).norm() <= 1e-14);

  CHECK_THROWS_AS(pure_map(Mat::Zero(2, 2), phi), std::runtime_error);
}

TEST_CASE("unitary pure maps are Fubini-Study isometries") {
  Rng rng(43);
  const Mat u = haar_unitary(4, rng);
  for (int t = 0; t < 20; ++t) {
    const Vec a = random_ket(4, rng), b = random_ket(4, rng);
    const PureState pa{Ket(a)}, pb{Ket(b)};
    const PureState qa{Ket(pure_map(u, a))}, qb{Ket(pure_map(u, b))};
    CHECK(std::abs(fubini_study(pa, pb) - fubini_study(qa, qb)) <= 1e-10);
    CHECK(std::abs(pure_map(u, a).norm() - 1.0) <= 1e-13);
  }
}

TEST_CASE("pure_probability fixed examples and normalization") {
  Rng rng(44);
  // Constant probabilities from W_i = sqrt(p_i) 1.
  const Vec phi = random_ket(3, rng);
  CHECK(pure_probability(Mat(std::sqrt(0.3) * Mat::Identity(3, 3)), phi) ==
        doctest::Approx(0.3).epsilon(1e-12));

  Mat w1 = Mat::Zero(2, 2), w2 = Mat::Zero(2, 2);
  w1(0, 0) = 1.0;
  w2(1, 1) = 1.0;
  Vec e1 = Vec::Zero(2);
  e1[0] = 1.0;
  CHECK(pure_probability(w1, e1) == doctest::Approx(1.0));
  CHECK(pure_probability(w2, e1) == doctest::Approx(0.0));

  // Random resolution of identity from stacked isometry blocks.
  const auto ws = random_kraus_set(3, 4, rng);
  for (int t = 0; t < 10; ++t) {
    const Vec psi = random_ket(3, rng);
    double sum = 0.0;
    for (const auto& w : ws) sum += pure_probability(w, psi);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("mixed_map: conjugation and homothety") {
  Rng rng(45);
  const Mat u = haar_unitary(3, rng);
  const Mat rho = random_density(3, rng);
  const Mat out = mixed_map(ConjugateBy{u}, rho);
  Eigen::SelfAdjointEigenSolver<Mat> ea(hermitize(out)), eb(hermitize(rho));
  CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12);

  // Homothety toward rho1 applied to the orthogonal projector rho2.
  Mat rho1 = Mat::Zero(2, 2), rho2 = Mat::Zero(2, 2);
  rho1(0, 0) = 1.0;
  rho2(1, 1) = 1.0;
  const Mat h = mixed_map(Homothety{rho1}, rho2);
  CHECK(h(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(h(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Near-singular conjugation still yields a valid state.
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v += 0.05 * pauli(1);
  for (int t = 0; t < 10; ++t) {
    const Mat r = mixed_map(ConjugateBy{v}, random_density(2, rng));
    CHECK_NOTHROW(DensityMatrix{r});
  }

  CHECK_THROWS_AS(mixed_map(ConjugateBy{Mat::Zero(2, 2)}, rho2),
                  std::runtime_error);
}

TEST_CASE("mixed_probability: linear form in rho") {
  CHECK(mixed_probability(ConstantQProb{0.4}, Mat::Identity(2, 2)) ==
        doctest::Approx(0.4));
  Mat l1 = Mat::Zero(2, 2);
  l1(0, 0) = 1.0;
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  CHECK(mixed_probability(OperatorProb{l1}, rho) == doctest::Approx(0.75));

  Rng rng(46);
  const auto ws = random_kraus_set(3, 3, rng);
  for (int t = 0; t < 10; ++t) {
    const Mat r = random_density(3, rng);
    double sum = 0.0;
    for (const auto& w : ws)
      sum += mixed_probability(OperatorProb{Mat(w.adjoint() * w)}, r);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("HomogeneousQIFS: W = V and the induced channel is linear") {
  Rng rng(47);
  const auto kraus = random_kraus_set(3, 2, rng);
  const auto h = HomogeneousQIFS::from_kraus(kraus);
  for (std::size_t i = 0; i < kraus.size(); ++i)
    CHECK(max_abs(h.pure.v[i] - h.pure.w[i]) <= 1e-12);
  for (int t = 0; t < 10; ++t) {
    const Mat r1 = random_density(3, rng), r2 = random_density(3, rng);
    const double a = rng.uniform();
    const Mat lhs = h.channel.apply_raw(a * r1 + (1.0 - a) * r2);
    const Mat rhs = a * h.channel.apply_raw(r1) + (1.0 - a) * h.channel.apply_raw(r2);
    CHECK(max_abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("qifs_trajectory: pure states stay normalized") {
  Rng rng(48);
  const double r = 1.0 / std::sqrt(2.0);
  const Mat u1 = haar_unitary(2, rng), u2 = haar_unitary(2, rng);
  const auto q = PureQIFS::make({u1, u2}, {r * u1, r * u2});
  const auto traj = qifs_trajectory(q, random_ket(2, rng), 500, 7);
  CHECK(traj.size() == 501);
  for (const auto& phi : traj) CHECK(std::abs(phi.norm() - 1.0) <= 1e-12);
}

TEST_CASE("homothety trajectory stays on the rho1-rho2 segment") {
  const auto q = homothety_qifs();
  Mat rho0 = Mat::Zero(2, 2);
  rho0(0, 0) = 1.0;
  const auto traj = qifs_trajectory(q, rho0, 2000, 9);
  for (const auto& rho : traj) {
    CHECK(std::abs(rho(0, 1)) <= 1e-14);  // stays diagonal
    const double x = rho(0, 0).real();
    CHECK(x >= -1e-12);
    CHECK(x <= 1.0 + 1e-12);
    CHECK(std::abs(rho(0, 0).real() + rho(1, 1).real() - 1.0) <= 1e-12);
  }
}

TEST_CASE("trajectories are reproducible by seed") {
  const auto q = homothety_qifs();
  const Mat rho0 = 0.5 * Mat::Identity(2, 2);
  const auto a = qifs_trajectory(q, rho0, 300, 123);
  const auto b = qifs_trajectory(q, rho0, 300, 123);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(max_abs(a[i] - b[i]) == 0.0);
}

TEST_CASE("barycenter: homothety QIFS averages to the maximally mixed state") {
  const auto q = homothety_qifs();
  Mat rho0 = Mat::Zero(2, 2);
  rho0(0, 0) = 1.0;
  const auto traj = qifs_trajectory(q, rho0, 100000, 109);
  const auto bary = barycenter_estimate(traj, 100);
  CHECK(trace_distance(bary.matrix(), Mat(0.5 * Mat::Identity(2, 2))) <= 0.02);
}

TEST_CASE("barycenter: unitary QIFS averages to 1/N") {
  Rng rng(50);
  const double r = 1.0 / std::sqrt(2.0);
  const Mat u1 = haar_unitary(2, rng), u2 = haar_unitary(2, rng);
  const auto q = PureQIFS::make({u1, u2}, {r * u1, r * u2});
  Vec e0 = Vec::Zero(2);
  e0[0] = 1.0;
  const auto traj = qifs_trajectory(q, e0, 100000, 51);
  const auto bary = barycenter_estimate(traj, 100);
  CHECK(trace_distance(bary.matrix(), Mat(0.5 * Mat::Identity(2, 2))) <= 0.02);
}

TEST_CASE("barycenter of a constant trajectory is that state") {
  Rng rng(52);
  const Mat rho = random_density(3, rng);
  const std::vector<Mat> traj(50, rho);
  const auto bary = barycenter_estimate(traj, 10);
  CHECK(max_abs(bary.matrix() - rho) <= 1e-13);
}
