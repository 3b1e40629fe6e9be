#include <catch_amalgamated.hpp>

#include <random>

#include "dixlab/spectral_core.hpp"

using namespace dixlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("eigenvalue moduli sort into singular values") {
  auto m = eigen_to_singular({cplx(0.5, 0.0), cplx(0.0, -2.0), cplx(-1.0, 0.0)});
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 2.0);
  CHECK(m[1] == 1.0);
  CHECK(m[2] == 0.5);
}

TEST_CASE("eigenvalue order breaks modulus ties by argument then index") {
  std::vector<cplx> v{cplx(1.0, 0.0), cplx(-1.0, 0.0), cplx(0.0, 1.0), cplx(0.0, -1.0), cplx(2.0, 0.0), cplx(1.0, 0.0)};
  auto idx = eigenvalue_order(v);
  CHECK(idx == std::vector<std::size_t>{4, 3, 0, 5, 2, 1});
}

TEST_CASE("quasi-norm and membership scans") {
  auto h = seq_harmonic();
  CHECK(quasi_norm_estimate(h, weight_gk(0), 1 << 16) < 3.0);
  auto r = ideal_membership(h, weight_gk(0), 1 << 16, 64);
  CHECK(r.verdict == Membership::inside);
  // g_1 values against the g_0 ideal grow like log n
  auto d = seq_weight_diagonal(weight_gk(1));
  auto o = ideal_membership(d, weight_gk(0), 1 << 16, 64);
  CHECK(o.verdict == Membership::outside_trend);
  CHECK(o.sup_ratio > 5.0);
  CHECK_THROWS_AS(ideal_membership(h, weight_gk(0), 10, 64), Error);
  CHECK_THROWS_AS(quasi_norm_estimate(seq_weighted(bounded_alternating(), h), weight_gk(0), 10), Error);
}

TEST_CASE("submajorization on finite lists") {
  std::vector<double> s{3.0, 1.0, 1.0}, t{2.0, 2.0, 1.0};
  CHECK_FALSE(submajorize_check(s, t, 3));
  CHECK(submajorize_check(t, s, 3));
  CHECK_THROWS_AS(submajorize_check({1.0, 2.0}, t, 2), Error);
  CHECK_THROWS_AS(submajorize_check(s, t, 4), Error);
  CHECK(log_submajorize_check({2.0, 0.5}, {1.5, 1.0}, 2) == false);
  CHECK(log_submajorize_check({1.0, 0.5}, {1.5, 1.0}, 2));
  CHECK(log_submajorize_check({1.0, 0.0}, {1.5, 0.0}, 2));
  CHECK_FALSE(log_submajorize_check({1.0, 0.5}, {1.5, 0.0}, 2));
}

TEST_CASE("cesaro means of the harmonic sequence") {
  auto c = cesaro(seq_harmonic());
  // (1/(n+1)) H_{n+1}
  NeumaierSum<double> H;
  for (int n = 0; n < 1000; ++n) {
    H.add(1.0 / (n + 1.0));
    CHECK_THAT(c(n).real(), WithinRel(H.value() / (n + 1.0), 1e-14));
  }
  auto m = cesaro_means({4.0, 2.0, 0.0});
  CHECK(m == std::vector<double>{4.0, 3.0, 2.0});
}

TEST_CASE("tensor_top matches a brute-force sort") {
  const std::uint64_t N = 1u << 16;
  auto h = seq_harmonic();
  auto top = tensor_top(h, h, N);
  std::vector<double> all;
  all.reserve(std::size_t(N) * 8);
  // every product that can reach the top N has i, j < N
  for (std::uint64_t i = 0; i < N; ++i)
    for (std::uint64_t j = 0; j < N; ++j) {
      const double v = (1.0 / double(i + 1)) * (1.0 / double(j + 1));
      if (v < 1.0 / double(N) * 0.05) break;
      all.push_back(v);
    }
  REQUIRE(all.size() >= N);
  std::partial_sort(all.begin(), all.begin() + N, all.end(), std::greater<double>());
  for (std::uint64_t n = 0; n < N; ++n) REQUIRE(top[n] == all[n]);

  // random finite lists against the exact full product
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(1 + rng() % 40), b(1 + rng() % 40);
    for (auto& x : a) x = U(rng);
    for (auto& x : b) x = U(rng);
    std::sort(a.begin(), a.end(), std::greater<double>());
    std::sort(b.begin(), b.end(), std::greater<double>());
    std::vector<double> full;
    for (double x : a)
      for (double y : b) full.push_back(x * y);
    std::sort(full.begin(), full.end(), std::greater<double>());
    const std::size_t n = full.size() + 5;
    auto got = tensor_singular_values(a, b, n);
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(got[i] == full[i]);
    for (std::size_t i = full.size(); i < n; ++i) CHECK(got[i] == 0.0);
  }
}

TEST_CASE("tensor prefixes report when they cannot certify N") {
  std::vector<double> a{1.0, 0.5}, b{1.0, 0.5};
  CHECK_NOTHROW(tensor_singular_values(a, b, 3, 0.1, 0.1));
  CHECK_THROWS_AS(tensor_singular_values(a, b, 4, 0.4, 0.4), Error);
  auto p = seq_prefix({1.0, 0.9, 0.8}, SequenceKind::singular_value, "p");
  CHECK_THROWS_AS(tensor_top(p, p, 9), Error);
}

TEST_CASE("tensor power totals multiply") {
  auto h = seq_harmonic();
  auto t = seq_tensor(h, h, 1000);
  REQUIRE(t.power_total);
  CHECK_THAT(t.power_total(2.0), WithinRel(std::pow(std::numbers::pi, 4) / 36.0, 1e-12));
  auto f = seq_tensor(seq_values({2.0, 1.0}, "a"), seq_values({3.0}, "b"), 10);
  CHECK(f(0) == cplx(6.0));
  CHECK(f(1) == cplx(3.0));
  CHECK(f(5) == cplx(0.0));
}

TEST_CASE("tensor with the harmonic operator sandwiches the Cesaro means") {
  CHECK(tensor_sandwich_check(seq_harmonic(), 4096));
  CHECK(tensor_sandwich_check(seq_weight_diagonal(weight_gk(1)), 4096));
  CHECK(tensor_sandwich_check(std::vector<double>{5.0, 1.0, 1.0, 0.25}, 64));
  auto r = tensor_sandwich(seq_harmonic(), 256);
  CHECK(r.holds);
  CHECK(r.first_violation == SIZE_MAX);
}
