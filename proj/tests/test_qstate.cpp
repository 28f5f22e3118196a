#include <doctest.h>

#include <cmath>
#include <complex>

#include "qifs/qstate.hpp"
#include "qifs/sampling.hpp"

using namespace qifs;

namespace {

DensityMatrix diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return DensityMatrix(m);
}

PureState basis_state(int n, int k) {
  Vec v = Vec::Zero(n);
  v[k] = 1.0;
  return PureState(Ket(v));
}

}  // namespace

TEST_CASE("fubini_study on fixed pairs") {
  Rng rng(42);
  const Vec psi = random_ket(3, rng);
  const PureState a{Ket(psi)};
  // arccos has an O(sqrt(eps)) cliff at overlap 1, so "zero" means <= 1e-7.
  CHECK(fubini_study(a, a) <= 1e-7);
  CHECK(fubini_study(basis_state(2, 0), basis_state(2, 1)) ==
        doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("fubini_study matches a direct inner-product evaluation") {
  Rng rng(7);
  const Vec a = random_ket(4, rng);
  const Vec b = random_ket(4, rng);
  // Independent oracle: plain loops over std::complex, no linear algebra.
  std::complex<double> ip = 0.0;
  for (int i = 0; i < 4; ++i) ip += std::conj(a[i]) * b[i];
  const double expected = std::acos(std::abs(ip));
  CHECK(fubini_study(PureState{Ket(a)}, PureState{Ket(b)}) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fubini_study rejects dimension mismatch") {
  CHECK_THROWS_AS(fubini_study(basis_state(2, 0), basis_state(3, 0)),
                  std::invalid_argument);
}

TEST_CASE("hs distance fixed values") {
  const auto p0 = DensityMatrix::pure(Ket((Vec(2) << 1, 0).finished()));
  const auto p1 = DensityMatrix::pure(Ket((Vec(2) << 0, 1).finished()));
  CHECK(hs_distance(p0, p0) == doctest::Approx(0.0));
  CHECK(hs_distance(p0, p1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hs_distance(diag2(1, 0), diag2(0.5, 0.5)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("trace distance fixed values") {
  const auto p0 = DensityMatrix::pure(Ket((Vec(2) << 1, 0).finished()));
  const auto p1 = DensityMatrix::pure(Ket((Vec(2) << 0, 1).finished()));
  CHECK(trace_distance(p0, p0) == doctest::Approx(0.0));
  CHECK(trace_distance(p0, p1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace_distance(diag2(0.75, 0.25), diag2(0.25, 0.75)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bures distance fixed values") {
  const auto p0 = DensityMatrix::pure(Ket((Vec(2) << 1, 0).finished()));
  const auto p1 = DensityMatrix::pure(Ket((Vec(2) << 0, 1).finished()));
  CHECK(bures_distance(p0, p0) == doctest::Approx(0.0));
  CHECK(bures_distance(p0, p1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(bures_distance(diag2(0.5, 0.5), diag2(1, 0)) ==
        doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("bures rejects non-Hermitian input") {
  Mat bad(2, 2);
  bad << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(bures_distance(bad, Mat(Mat::Identity(2, 2) * 0.5)),
                  std::invalid_argument);
}

TEST_CASE("von Neumann entropy fixed values") {
  const auto pure = DensityMatrix::pure(Ket((Vec(2) << 1, 0).finished()));
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(5)) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  const double expected = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  CHECK(von_neumann_entropy(diag2(0.25, 0.75)) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("entropy is unitary invariant") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Mat rho = random_density(4, rng);
    const Mat u = haar_unitary(4, rng);
    CHECK(std::abs(von_neumann_entropy(Mat(u * rho * u.adjoint())) -
                   von_neumann_entropy(rho)) <= 1e-10);
  }
}

TEST_CASE("partial trace: product, Bell, maximally mixed") {
  Rng rng(11);
  const Mat rho_a = random_density(2, rng);
  const Mat rho_b = random_density(3, rng);
  const Mat product = kron(rho_a, rho_b);
  CHECK(max_abs(partial_trace(product, 2, 3, Subsystem::B) - rho_a) <= 1e-12);
  CHECK(max_abs(partial_trace(product, 2, 3, Subsystem::A) - rho_b) <= 1e-12);

  Vec bell = Vec::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const Mat bell_rho = bell * bell.adjoint();
  // Independent oracle: direct index contraction.
  Mat oracle = Mat::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 2; ++b) oracle(a, a2) += bell_rho(a * 2 + b, a2 * 2 + b);
  CHECK(max_abs(partial_trace(bell_rho, 2, 2, Subsystem::B) - oracle) <= 1e-14);
  CHECK(max_abs(oracle - Mat(0.5 * Mat::Identity(2, 2))) <= 1e-12);

  const Mat big = Mat::Identity(6, 6) / 6.0;
  CHECK(max_abs(partial_trace(big, 3, 2, Subsystem::B) -
                Mat(Mat::Identity(3, 3) / 3.0)) <= 1e-12);
}

TEST_CASE("partial trace of a valid state is a valid state") {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Mat joint = random_density(6, rng);
    const DensityMatrix reduced =
        partial_trace(DensityMatrix(joint), 2, 3, Subsystem::B);
    CHECK(std::abs(reduced.matrix().trace().real() - 1.0) <= 1e-10);
  }
}

TEST_CASE("Ket and DensityMatrix invariants") {
  CHECK_THROWS_AS(Ket((Vec(2) << 1.0, 1.0).finished()), std::invalid_argument);
  CHECK_NOTHROW(Ket::normalized((Vec(2) << 1.0, 1.0).finished()));
  CHECK_THROWS_AS(Ket::normalized(Vec::Zero(3)), std::invalid_argument);

  Mat non_herm(2, 2);
  non_herm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{non_herm}, std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix(Mat(0.9 * Mat::Identity(2, 2))),
                  std::invalid_argument);

  Mat indefinite = Mat::Zero(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{indefinite}, std::invalid_argument);

  // Rounding-level negativity is clipped, not rejected.
  Mat nearly = Mat::Zero(2, 2);
  nearly(0, 0) = 1.0 + 5e-11;
  nearly(1, 1) = -5e-11;
  const DensityMatrix fixed(nearly);
  Eigen::SelfAdjointEigenSolver<Mat> es(fixed.matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1e-15);
  CHECK(std::abs(fixed.matrix().trace().real() - 1.0) <= 1e-12);
}

TEST_CASE("PureState equality is phase invariant") {
  Rng rng(3);
  const Vec psi = random_ket(3, rng);
  const Vec rotated = std::exp(Cx(0, 1.234)) * psi;
  CHECK(approx_equal(PureState{Ket(psi)}, PureState{Ket(rotated)}));
  CHECK_FALSE(approx_equal(PureState{Ket(psi)}, PureState{Ket(random_ket(3, rng))}));
}

TEST_CASE("distances: symmetry, identity, triangle inequality") {
  Rng rng(17);
  using DistFn = double (*)(const Mat&, const Mat&);
  const DistFn dists[] = {hs_distance, trace_distance, bures_distance};
  for (int dim : {2, 3}) {
    for (int t = 0; t < 40; ++t) {
      const Mat a = random_density(dim, rng);
      const Mat b = random_density(dim, rng);
      const Mat c = random_density(dim, rng);
      for (DistFn dist : dists) {
        CHECK(dist(a, b) == doctest::Approx(dist(b, a)).epsilon(1e-8));
        CHECK(dist(a, b) + dist(b, c) >= dist(a, c) - 1e-10);
      }
      CHECK(hs_distance(a, a) <= 1e-10);
      CHECK(trace_distance(a, a) <= 1e-10);
      CHECK(bures_distance(a, a) <= 1e-6);  // sqrt cliff at coinciding arguments
    }
  }
}

TEST_CASE("distance ordering bounds on random pairs") {
  Rng rng(23);
  for (int dim : {2, 3}) {
    for (int t = 0; t < 500; ++t) {
      const Mat a = random_density(dim, rng);
      const Mat b = random_density(dim, rng);
      const double dtr = trace_distance(a, b);
      const double db = bures_distance(a, b);
      CHECK(db * db <= 2.0 * dtr + 1e-10);
      CHECK(hs_distance(a, b) <= dtr + 1e-10);
    }
  }
}
