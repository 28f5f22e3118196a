#include <doctest.h>

#include <cmath>

#include "qifs/invariant.hpp"
#include "qifs/qifs_system.hpp"
#include "test_support.hpp"

using namespace qifs;

TEST_CASE("superoperator: identity, unitary, depolarizing spectra") {
  CHECK(max_abs(superoperator_of(identity_channel(3)).m - Mat::Identity(9, 9)) <=
        1e-15);

  Rng rng(61);
  const Mat u = haar_unitary(3, rng);
  const auto conj = QuantumChannel::from_kraus({u});
  CHECK(is_unitary(superoperator_of(conj).m, 1e-12));

  const double p = 0.4;
  Eigen::ComplexEigenSolver<Mat> es(superoperator_of(depolarizing(p)).m);
  std::vector<double> mags;
  for (int i = 0; i < 4; ++i) mags.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mags.begin(), mags.end());
  CHECK(mags[3] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    CHECK(mags[i] == doctest::Approx(std::abs(1.0 - 4.0 * p / 3.0)).epsilon(1e-10));
}

TEST_CASE("superoperator matches direct channel application") {
  Rng rng(62);
  const auto kraus = random_kraus_set(3, 3, rng);
  const auto chan = QuantumChannel::from_kraus(kraus);
  const auto sop = superoperator_of(chan);
  for (int t = 0; t < 10; ++t) {
    const Mat rho = random_density(3, rng);
    CHECK(max_abs(unvec_rm(sop.apply(vec_rm(rho)), 3) - chan.apply_raw(rho)) <=
          1e-12);
  }
}

TEST_CASE("superoperator parallel kernel equals the serial reference") {
  Rng rng(63);
  const auto chan = QuantumChannel::from_kraus(random_kraus_set(5, 4, rng));
  CHECK(max_abs(superoperator_of(chan).m - superoperator_of_serial(chan).m) <=
        1e-15);
}

TEST_CASE("superoperator spectral radius of TP channels is 1") {
  Rng rng(64);
  std::vector<QuantumChannel> channels;
  channels.push_back(depolarizing(0.25));
  channels.push_back(QuantumChannel::from_kraus(random_kraus_set(3, 2, rng)));
  channels.push_back(random_external_field(test::random_positive_probs(3, rng),
                                           {haar_unitary(3, rng),
                                            haar_unitary(3, rng),
                                            haar_unitary(3, rng)}));
  for (const auto& chan : channels) {
    Eigen::ComplexEigenSolver<Mat> es(superoperator_of(chan).m);
    double radius = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      radius = std::max(radius, std::abs(es.eigenvalues()[i]));
    CHECK(radius <= 1.0 + 1e-9);
    CHECK(radius >= 1.0 - 1e-9);
  }
}

TEST_CASE("fixed_states: depolarizing, commuting diagonals, identity") {
  const auto rep = fixed_states(depolarizing(0.3));
  CHECK(rep.multiplicity == 1);
  CHECK(rep.unique);
  REQUIRE(rep.state.has_value());
  CHECK(max_abs(rep.state->matrix() - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-10);
  CHECK(rep.residual <= 1e-10);

  Mat u1 = Mat::Zero(2, 2), u2 = Mat::Zero(2, 2);
  u1.diagonal() << 1.0, std::exp(Cx(0, 0.8));
  u2.diagonal() << 1.0, std::exp(Cx(0, 1.9));
  const auto diag_rep = fixed_states(random_external_field({0.5, 0.5}, {u1, u2}));
  CHECK(diag_rep.multiplicity >= 2);
  CHECK_FALSE(diag_rep.unique);
  // Every diagonal state is fixed; check one explicitly.
  Mat rho = Mat::Zero(2, 2);
  rho.diagonal() << 0.8, 0.2;
  const auto chan = random_external_field({0.5, 0.5}, {u1, u2});
  CHECK(max_abs(chan.apply_raw(rho) - rho) <= 1e-14);

  CHECK(fixed_states(identity_channel(3)).multiplicity == 9);
}

TEST_CASE("fixed_states rejects non-trace-preserving channels") {
  const auto broken = QuantumChannel::from_kraus({0.5 * Mat::Identity(2, 2)});
  CHECK_THROWS_AS(fixed_states(broken), std::invalid_argument);
}

TEST_CASE("power iteration: homothety averaged map reaches 1/2 in 40 steps") {
  Mat rho1 = Mat::Zero(2, 2), rho2 = Mat::Zero(2, 2);
  rho1(0, 0) = 1.0;
  rho2(1, 1) = 1.0;
  const auto qifs = MixedQIFS::make({Homothety{rho1}, Homothety{rho2}},
                                    {ConstantQProb{0.5}, ConstantQProb{0.5}});
  const auto res = power_iteration(
      [&qifs](const Mat& r) { return averaged_map(qifs, r); },
      DensityMatrix(rho1), 40, 1e-12);
  CHECK(res.converged);
  CHECK(res.steps <= 40);
  CHECK(max_abs(res.state.matrix() - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-12);
}

TEST_CASE("power iteration: depolarizing and unitary channels") {
  Rng rng(65);
  const auto res = power_iteration(depolarizing(0.5),
                                   DensityMatrix(random_density(2, rng)), 80, 1e-12);
  CHECK(res.converged);
  CHECK(res.steps <= 80);
  CHECK(max_abs(res.state.matrix() - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-11);

  const Mat u = haar_unitary(3, rng);
  const auto one = power_iteration(QuantumChannel::from_kraus({u}),
                                   DensityMatrix::maximally_mixed(3), 10, 1e-12);
  CHECK(one.converged);
  CHECK(one.steps == 1);
}

TEST_CASE("commutant: Paulis, single diagonal, identity family") {
  const auto paulis = commutant({pauli(1), pauli(2)});
  CHECK(paulis.dimension == 1);
  CHECK_FALSE(paulis.reducible);

  const auto single = commutant({Mat(pauli(3))});  // diag(1, -1)
  CHECK(single.dimension == 2);
  CHECK(single.reducible);
  REQUIRE(single.blocks.size() == 2);
  CHECK(single.blocks[0].size() == 1);
  CHECK(single.blocks[1].size() == 1);

  CHECK(commutant({Mat(Mat::Identity(3, 3))}).dimension == 9);

  CHECK_THROWS_AS(commutant({Mat(2.0 * Mat::Identity(2, 2))}), std::invalid_argument);
}

TEST_CASE("commutant basis elements commute with the family") {
  Rng rng(66);
  const auto family = test::reducible_family({2, 3}, 3, rng);
  const auto rep = commutant(family);
  CHECK(rep.dimension == 2);
  CHECK(rep.reducible);
  for (const auto& x : rep.basis)
    for (const auto& u : family) CHECK(max_abs(u * x - x * u) <= 1e-8);
  // Blocks have the constructed sizes.
  std::vector<std::size_t> sizes;
  for (const auto& b : rep.blocks) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 3});
  // The transform's blocks really reduce every family member.
  for (const auto& u : family) {
    const Mat t = rep.transform.adjoint() * u * rep.transform;
    double off = 0.0;
    std::size_t offset = 0;
    for (const auto& b : rep.blocks) {
      for (int r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < b.size(); ++c) {
          const int col = static_cast<int>(offset + c);
          const bool inside = r >= static_cast<int>(offset) &&
                              r < static_cast<int>(offset + b.size());
          if (!inside) off = std::max(off, std::abs(t(r, col)));
        }
      offset += b.size();
    }
    CHECK(off <= 1e-7);
  }
}

TEST_CASE("uniqueness verdict: Paulis unique, block families not") {
  const auto pauli_verdict = uniqueness_verdict(
      {0.25, 0.25, 0.25, 0.25},
      {Mat(Mat::Identity(2, 2)), pauli(1), pauli(2), pauli(3)});
  CHECK(pauli_verdict.unique);
  CHECK(pauli_verdict.consistent);

  Rng rng(67);
  Mat basis;
  const auto family = test::reducible_family({1, 2}, 2, rng, &basis);
  const auto verdict = uniqueness_verdict({0.4, 0.6}, family);
  CHECK_FALSE(verdict.unique);
  CHECK(verdict.consistent);
  // The appendix construction is invariant for the induced channel.
  const Mat rho = basis * direct_sum_state({1, 2}, {0.35, 0.65}) * basis.adjoint();
  const auto chan = random_external_field({0.4, 0.6}, family);
  CHECK(max_abs(chan.apply_raw(rho) - rho) <= 1e-8);

  const auto haar_verdict =
      uniqueness_verdict({0.5, 0.5}, {haar_unitary(4, rng), haar_unitary(4, rng)});
  CHECK(haar_verdict.unique);
  CHECK(haar_verdict.consistent);

  CHECK_THROWS_AS(uniqueness_verdict({0.0, 1.0}, {pauli(1), pauli(2)}),
                  std::invalid_argument);
}

TEST_CASE("Proposition-2 equivalence on a quick random suite") {
  Rng rng(68);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3.0);  // 2..4
    std::vector<int> sizes;
    if (n == 2) sizes = {1, 1};
    else if (n == 3) sizes = {1, 2};
    else sizes = {2, 2};
    const auto family = test::reducible_family(sizes, 2, rng);
    const auto probs = test::random_positive_probs(2, rng);
    const auto verdict = uniqueness_verdict(probs, family);
    CHECK_FALSE(verdict.unique);
    CHECK(verdict.consistent);

    std::vector<Mat> haar{haar_unitary(n, rng), haar_unitary(n, rng)};
    const auto hv = uniqueness_verdict(probs, haar);
    CHECK(hv.unique);
    CHECK(hv.consistent);
  }
}

TEST_CASE("lemma 1: forced zero block forces the opposite block") {
  Rng rng(69);
  // Exact direct sum: the opposite block is exactly zero.
  Mat u = Mat::Zero(5, 5);
  u.block(0, 0, 2, 2) = haar_unitary(2, rng);
  u.block(2, 2, 3, 3) = haar_unitary(3, rng);
  const auto rep = lemma1_validate(u, {0, 1});
  CHECK(rep.precondition_met);
  CHECK(rep.opposite_max == 0.0);
  CHECK(rep.holds);

  // Direct sums conjugated by block-respecting permutations.
  for (int t = 0; t < 100; ++t) {
    Mat v = Mat::Zero(4, 4);
    v.block(0, 0, 2, 2) = haar_unitary(2, rng);
    v.block(2, 2, 2, 2) = haar_unitary(2, rng);
    // Swap within each block with probability 1/2.
    Mat perm = Mat::Identity(4, 4);
    if (rng.uniform() < 0.5) {
      perm(0, 0) = perm(1, 1) = 0;
      perm(0, 1) = perm(1, 0) = 1;
    }
    if (rng.uniform() < 0.5) {
      perm(2, 2) = perm(3, 3) = 0;
      perm(2, 3) = perm(3, 2) = 1;
    }
    const Mat w = perm.transpose() * v * perm;
    const auto r = lemma1_validate(w, {0, 1});
    CHECK(r.precondition_met);
    CHECK(r.holds);
    CHECK(r.opposite_max <= r.bound);
  }

  // Dense unitaries do not satisfy the precondition.
  const auto dense = lemma1_validate(haar_unitary(4, rng), {0});
  CHECK_FALSE(dense.precondition_met);
  CHECK_FALSE(dense.holds);

  CHECK_THROWS_AS(lemma1_validate(haar_unitary(3, rng), {}), std::invalid_argument);
  CHECK_THROWS_AS(lemma1_validate(haar_unitary(3, rng), {0, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("strict spectral gap: power iteration is start-independent") {
  Rng rng(70);
  const auto chan = depolarizing(0.35);
  // Second eigenvalue magnitude strictly below 1.
  Eigen::ComplexEigenSolver<Mat> es(superoperator_of(chan).m);
  std::vector<double> mags;
  for (int i = 0; i < 4; ++i) mags.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mags.rbegin(), mags.rend());
  REQUIRE(mags[1] < 1.0 - 1e-6);
  std::vector<Mat> limits;
  for (int s = 0; s < 20; ++s) {
    const auto res = power_iteration(chan, DensityMatrix(random_density(2, rng)),
                                     400, 1e-13);
    REQUIRE(res.converged);
    limits.push_back(res.state.matrix());
  }
  for (const auto& m : limits)
    CHECK(trace_distance(m, limits[0]) <= 1e-8);
}

TEST_CASE("fixed_states and power_iteration agree when unique") {
  Rng rng(71);
  const auto chan = QuantumChannel::from_kraus(random_kraus_set(3, 2, rng));
  const auto rep = fixed_states(chan);
  if (rep.unique && rep.state) {
    const auto pow = power_iteration(chan, DensityMatrix::maximally_mixed(3),
                                     20000, 1e-13);
    CHECK(trace_distance(pow.state.matrix(), rep.state->matrix()) <= 1e-8);
  }
}
