#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "dixlab/matrix_oracle.hpp"

using namespace dixlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::MatrixXcd to_eigen(const DenseMatrix& A) {
  Eigen::MatrixXcd M(A.order, A.order);
  for (std::size_t i = 0; i < A.order; ++i)
    for (std::size_t j = 0; j < A.order; ++j) M(i, j) = A(i, j);
  return M;
}

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix A(n);
  for (auto& v : A.a) v = rng.disc();
  return A;
}

}  // namespace

TEST_CASE("dense matrix construction") {
  CHECK_THROWS_AS(DenseMatrix(0), Error);
  CHECK_THROWS_AS(DenseMatrix(65), Error);
  CHECK_THROWS_AS(DenseMatrix(2, {1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(DenseMatrix(1, {cplx(std::nan(""), 0.0)}), Error);
  auto I = DenseMatrix::identity(3);
  CHECK(I.trace() == cplx(3.0));
  CHECK_THAT(I.frobenius(), WithinRel(std::sqrt(3.0), 1e-15));
}

TEST_CASE("symmetric eigenvalue examples") {
  auto e = symmetric_eigenvalues(DenseMatrix::identity(3));
  CHECK(e == std::vector<double>{1.0, 1.0, 1.0});
  auto s = symmetric_eigenvalues(DenseMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK_THAT(s[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(s[1], WithinAbs(-1.0, 1e-14));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto Q = random_orthogonal(3, seed);
    auto A = Q * DenseMatrix::diagonal({3.0, 1.0, 2.0}) * adjoint(Q);
    // clean the rounding asymmetry of the product
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < i; ++j) A(i, j) = A(j, i) = 0.5 * (A(i, j) + A(j, i));
    auto ev = symmetric_eigenvalues(A);
    CHECK_THAT(ev[0], WithinAbs(3.0, 1e-12));
    CHECK_THAT(ev[1], WithinAbs(2.0, 1e-12));
    CHECK_THAT(ev[2], WithinAbs(1.0, 1e-12));
  }
  CHECK_THROWS_AS(symmetric_eigenvalues(DenseMatrix(2, {0.0, 1.0, 0.5, 0.0})), Error);
}

TEST_CASE("symmetric eigenvalues sum to the trace") {
  for (std::size_t n : {4u, 16u, 64u}) {
    SplitMix64 rng(n);
    DenseMatrix A(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) A(i, j) = A(j, i) = 2.0 * rng.uniform() - 1.0;
    auto ev = symmetric_eigenvalues(A);
    double s = 0.0;
    for (double v : ev) s += v;
    CHECK(std::abs(s - A.trace().real()) <= 1e-10 * double(n) * A.frobenius());
    for (std::size_t i = 1; i < n; ++i) CHECK(ev[i] <= ev[i - 1]);
    Eigen::MatrixXd M = to_eigen(A).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    auto ref = es.eigenvalues();
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(ev[i], WithinAbs(ref(n - 1 - i), 1e-11));
  }
}

TEST_CASE("singular value examples") {
  auto d = singular_values(DenseMatrix::diagonal({cplx(0.5, 0.0), cplx(0.0, -3.0), cplx(2.0, 0.0)}));
  CHECK_THAT(d[0], WithinRel(3.0, 1e-14));
  CHECK_THAT(d[1], WithinRel(2.0, 1e-14));
  CHECK_THAT(d[2], WithinRel(0.5, 1e-14));
  auto u = singular_values(random_unitary(16, 9));
  for (double v : u) CHECK_THAT(v, WithinAbs(1.0, 1e-12));
  auto j = singular_values(DenseMatrix(2, {1.0, 1.0, 0.0, 1.0}));
  CHECK_THAT(j[0], WithinRel(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0), 1e-13));
  CHECK_THAT(j[1], WithinRel(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0), 1e-13));
}

TEST_CASE("singular values against Eigen's JacobiSVD") {
  for (std::size_t n : {1u, 3u, 8u, 33u, 64u}) {
    auto A = random_matrix(n, 1000 + n);
    auto sv = singular_values(A);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(A));
    auto ref = svd.singularValues();
    REQUIRE(sv.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(sv[i], WithinAbs(ref(i), 1e-12 * ref(0)));
  }
}

TEST_CASE("singular values are unitarily invariant") {
  for (std::size_t n : {4u, 16u, 32u}) {
    auto A = random_matrix(n, 77 + n);
    auto U = random_unitary(n, 99 + n);
    auto a = singular_values(A), b = singular_values(A * U), c = singular_values(U * A);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_THAT(b[i], WithinAbs(a[i], 1e-9));
      CHECK_THAT(c[i], WithinAbs(a[i], 1e-9));
    }
  }
}

TEST_CASE("triangular Weyl instances") {
  auto w = triangular_weyl_instance(5, 8, true);
  for (std::size_t i = 0; i < 8; ++i) CHECK_THAT(w.singular[i], WithinAbs(w.eigen_moduli[i], 1e-14));
  auto one = triangular_weyl_instance(12, 1);
  CHECK_THAT(one.singular[0], WithinRel(one.eigen_moduli[0], 1e-15));
  CHECK(weyl_holds(one));
  // same seed, same matrix
  auto a = triangular_weyl_instance(42, 16), b = triangular_weyl_instance(42, 16);
  CHECK(a.matrix.a == b.matrix.a);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(a.matrix(i, j) == cplx(0.0));
}

TEST_CASE("Weyl inequality over 200 seeds per order") {
  auto r = weyl_fuzz(200);
  CHECK(r.instances == 800);
  CHECK(r.violations == 0);
  CHECK(r.violating_seeds.empty());
}

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 0 from the published reference implementation
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  SplitMix64 u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    CHECK(std::abs(u.disc()) <= 1.0);
  }
}
