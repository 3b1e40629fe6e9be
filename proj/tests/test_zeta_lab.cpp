#include <catch_amalgamated.hpp>

#include "dixlab/zeta_lab.hpp"

using namespace dixlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SpectralSequence harmonic_prefix(std::uint64_t n) {
  std::vector<double> v;
  for (std::uint64_t j = 0; j < n; ++j) v.push_back(1.0 / double(j + 1));
  return seq_prefix(std::move(v), SequenceKind::singular_value, "p");
}

}  // namespace

TEST_CASE("grids") {
  CHECK(t_grid(6, 8) == std::vector<double>{64.0, 128.0, 256.0});
  auto r = r_grid(2, 3);
  CHECK(r == std::vector<double>{0.75, 0.875});
}

TEST_CASE("log-power tail integral bounds the tail sum") {
  LogPowerForm lp{1.0, 1, 2.0};
  for (double s : {0.5, 0.2}) {
    const std::uint64_t N = 1000;
    NeumaierSum<double> sum;
    for (std::uint64_t n = N; n < 4'000'000; ++n) sum.add(std::pow(lp(double(n)), 1.0 + s));
    const double bound = log_power_tail_integral(lp, s, double(N) - 1.0);
    CHECK(bound >= sum.value());
    // truncated sum misses a little; the bound should still be the same order
    CHECK(bound <= 3.0 * sum.value() + 1.0);
  }
}

TEST_CASE("harmonic zeta residue") {
  // zeta(1 + 1/t) / t = 1 + gamma / t + ...
  auto z = zeta_value(seq_harmonic(), std::nullopt, weight_gk(0), 1024.0);
  CHECK_THAT(z.normalized.real(), WithinAbs(1.0 + kEulerGamma / 1024.0, 1e-6));
  CHECK(z.tail_bound <= 1e-6 * 1024.0);
  auto r = residue_estimate(seq_harmonic(), std::nullopt, weight_gk(0), t_grid(6, 14));
  CHECK(r.estimate.verdict() == Verdict::converged);
  CHECK_THAT(r.estimate.value().real(), WithinAbs(1.0, 1e-3));
  CHECK_THROWS_AS(zeta_value(seq_harmonic(), std::nullopt, weight_gk(0), 0.0), Error);
}

TEST_CASE("g_1 diagonal zeta tends to 2 with G_1") {
  auto d = seq_weight_diagonal(weight_gk(1));
  auto r = residue_estimate(d, std::nullopt, weight_gk(1), t_grid(6, 14));
  INFO("value " << r.estimate.value().real());
  CHECK_THAT(r.estimate.value().real(), WithinAbs(2.0, 0.1));
  for (auto& s : r.samples) CHECK(s.tail_bound <= 1e-6 * weight_gk(1).G_exp(s.t));
}

TEST_CASE("zeta of a Pietsch operator uses exact blocks") {
  auto w = weight_gk(1);
  auto D = pietsch_operator(bounded_one(), w);
  auto z = zeta_value(D, std::nullopt, w, 64.0);
  // entries summed one by one for the first 20 blocks, then whole blocks of
  // 2^n equal entries g(2^n) until the terms are negligible
  const double q = 1.0 + 1.0 / 64.0;
  NeumaierSum<double> s;
  for (std::uint64_t j = 0; j < block_first(20); ++j) s.add(std::pow(D(j).real(), q));
  for (int n = 20; n < 40000; ++n) {
    const double x = double(n) * kLog2;
    s.add(std::exp(double(n) * kLog2 + q * (w.log_tg_exp(x) - x)));
  }
  CHECK(std::abs(z.raw.real() - s.value()) <= z.tail_bound + 1e-12 * s.value());
  CHECK(z.tail_bound < 1e-6 * w.G_exp(64.0));
}

TEST_CASE("finite rank zeta is a direct sum") {
  auto v = seq_values({0.5, 0.25}, "v");
  auto z = zeta_value(v, std::nullopt, weight_gk(0), 1.0);
  CHECK_THAT(z.raw.real(), WithinRel(0.25 + 0.0625, 1e-15));
  CHECK(z.tail == TailForm::none);
}

TEST_CASE("Abel means of the harmonic profile") {
  auto w = weight_gk(0);
  auto rs = r_grid(2, 14);
  auto p = abel_profile(seq_harmonic(), w, rs);
  auto scan = abel_scan(p, w, rs);
  CHECK(scan.skipped.empty());
  CHECK(scan.estimate.verdict() == Verdict::converged);
  CHECK_THAT(scan.estimate.value().real(), WithinAbs(1.0, 1e-2));
  CHECK_THROWS_AS(abel_sum(p, w, 1.0), Error);
  CHECK_THROWS_AS(abel_sum(p, w, 0.0), Error);
}

TEST_CASE("Abel truncation failures are reported, not hidden") {
  auto w = weight_gk(0);
  auto p = dyadic_profile(harmonic_prefix(1023), w, 60);
  CHECK(p.n_max == 9);
  CHECK_THROWS_AS(abel_sum(p, w, 1.0 - 1.0 / 4096.0), Error);
}

TEST_CASE("Tauberian transfer for the constant sequence") {
  auto one = [](std::uint64_t) { return cplx(1.0); };
  auto rep = tauberian_transfer_check(one, 1.0, 1.0);
  CHECK(rep.abel_near);
  CHECK(rep.cesaro_near);
  CHECK(rep.passes);
  // x_n = (n+1) with alpha = 2: (1-r)^2 sum (n+1) r^n = 1, n^{-2} sum -> 1/2
  auto lin = [](std::uint64_t n) { return cplx(double(n) + 1.0); };
  auto r2 = tauberian_transfer_check(lin, 2.0, 1.0, TauberGrids{2, 14, 4, 20});
  CHECK(r2.passes);
  CHECK_THAT(r2.target.real(), WithinRel(0.5, 1e-15));
  // complex data
  auto ph = [](std::uint64_t) { return cplx(0.0, 2.0); };
  CHECK(tauberian_transfer_check(ph, 1.0, cplx(0.0, 2.0)).passes);
  // explicit K that the data break
  CHECK_THROWS_AS(tauberian_transfer_check(lin, 2.0, 1.0, {}, 1e-3, 0.5), Error);
  CHECK_THROWS_AS(tauberian_transfer_check(one, -1.0, 1.0), Error);
}

TEST_CASE("equivalence report: harmonic and alternating harmonic") {
  EquivalenceOptions o;
  o.grid = Grid{4, 22};
  o.parallel = true;
  auto h = equivalence_report(bounded_one(), seq_harmonic(), 0, o);
  CHECK(h.consistent);
  CHECK_FALSE(h.contradiction);
  CHECK(h.partial_sum.verdict == Verdict::converged);
  CHECK(h.zeta.verdict == Verdict::converged);
  CHECK_THAT(h.zeta.scaled_value.real(), WithinAbs(1.0, 1e-2));
  CHECK_THAT(h.abel.scaled_value.real(), WithinAbs(1.0, 1e-2));
  auto a = equivalence_report(bounded_alternating(), seq_harmonic(), 0, o);
  CHECK(a.consistent);
  CHECK(std::abs(a.partial_sum.scaled_value) < 2e-2);
  CHECK(std::abs(a.zeta.scaled_value) < 2e-2);
  CHECK_THROWS_AS(equivalence_report(bounded_one(), seq_harmonic(), -1, o), Error);
}

TEST_CASE("equivalence report with a finite prefix caps its grid") {
  EquivalenceOptions o;
  o.grid = Grid{4, 22};
  auto p = harmonic_prefix(1u << 12);
  auto r = equivalence_report(bounded_one(), p, 0, o);
  bool noted = false;
  for (auto& n : r.notes)
    if (n.find("grid capped") != std::string::npos) noted = true;
  CHECK(noted);
}
