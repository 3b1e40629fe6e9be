#include <catch_amalgamated.hpp>

#include "dixlab/limits.hpp"

using namespace dixlab;
using Catch::Matchers::WithinAbs;

namespace {

DriftBasis inv() {
  return {[](double x) { return 1.0 / x; }};
}

}  // namespace

TEST_CASE("exact drift model extrapolates to its constant") {
  std::vector<std::pair<double, double>> pts;
  for (int m = 4; m <= 20; ++m) {
    const double x = m;
    pts.push_back({x, 2.5 + 3.0 / x});
  }
  auto e = estimate_limit(pts, inv(), 1e-3);
  CHECK(e.verdict == Verdict::converged);
  REQUIRE(e.extrapolated);
  CHECK_THAT(*e.extrapolated, WithinAbs(2.5, 1e-12));
  CHECK(e.window_inf <= *e.extrapolated + 1e-15);
  CHECK(*e.extrapolated <= e.window_sup + 1e-15);
  // raw values stay above the limit
  CHECK(e.raw_inf > 2.5);
}

TEST_CASE("oscillation beyond the drift model is diverged-range") {
  std::vector<std::pair<double, double>> pts;
  for (int m = 4; m <= 24; ++m) pts.push_back({double(m), 1.0 + 0.1 * std::cos(1.7 * m)});
  auto e = estimate_limit(pts, inv(), 1e-2);
  CHECK(e.verdict == Verdict::diverged_range);
  CHECK(e.width() > 0.05);
}

TEST_CASE("monotone slow drift that the model cannot absorb is inconclusive") {
  std::vector<std::pair<double, double>> pts;
  for (int m = 4; m <= 24; ++m) pts.push_back({double(m), std::log(double(m))});
  auto e = estimate_limit(pts, inv(), 1e-3);
  CHECK(e.verdict == Verdict::inconclusive);
}

TEST_CASE("too few points are inconclusive") {
  auto e = estimate_limit(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 1.0}}, inv(), 1e-2);
  CHECK(e.verdict == Verdict::inconclusive);
  auto empty = estimate_limit(std::vector<std::pair<double, double>>{}, inv(), 1e-2);
  CHECK(empty.verdict == Verdict::inconclusive);
}

TEST_CASE("window invariant holds for noisy converging data") {
  std::vector<std::pair<double, double>> pts;
  for (int m = 4; m <= 24; ++m) pts.push_back({double(m), 1.0 + 1.0 / m + 1e-6 * ((m % 3) - 1)});
  auto e = estimate_limit(pts, inv(), 1e-2);
  REQUIRE(e.extrapolated);
  CHECK(e.window_inf <= *e.extrapolated);
  CHECK(*e.extrapolated <= e.window_sup);
  CHECK(e.verdict == Verdict::converged);
}

TEST_CASE("complex limits combine verdicts") {
  std::vector<std::pair<double, std::complex<double>>> pts;
  for (int m = 4; m <= 20; ++m) pts.push_back({double(m), {1.0 + 1.0 / m, -2.0 + 0.5 / m}});
  auto c = estimate_limit(pts, inv(), 1e-3);
  CHECK(c.verdict() == Verdict::converged);
  CHECK_THAT(c.value().real(), WithinAbs(1.0, 1e-10));
  CHECK_THAT(c.value().imag(), WithinAbs(-2.0, 1e-10));
  CHECK_FALSE(c.is_real());
}
