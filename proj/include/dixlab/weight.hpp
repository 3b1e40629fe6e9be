#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "special.hpp"

namespace dixlab {

// f(t) = c * log^k(t + b) / (t + b); the g_k weights and the harmonic sequence
// have this shape and get closed-form zeta tails.
struct LogPowerForm {
  double c = 1.0;
  int k = 0;
  double b = 1.0;

  double operator()(double t) const {
    const double y = t + b;
    return c * std::pow(std::log(y), k) / y;
  }
};

struct WeightFamily {
  std::string descriptor;
  std::function<double(double)> g;             // g(t), t >= 0, unshifted
  std::function<double(double)> log_tg_exp;    // log(t g(t)) at t = e^x
  std::function<double(double)> G;             // normalizer G(t)
  std::function<double(double)> G_exp;         // G(e^x), finite for large x
  double alpha = 0.0;
  double shift_a = 0.0;
  // dyadic mass 2^n g(2^n) <= mass_K (n+1)^mass_p for all n >= 0
  double mass_K = 1.0;
  double mass_p = 0.0;
  std::optional<LogPowerForm> log_power;
  std::optional<int> gk_index;

  double g_shifted(double t) const { return g(t + shift_a); }
  double log_g_exp(double x) const { return log_tg_exp(x) - x; }
  double dyadic_mass(double n) const { return std::exp(log_tg_exp(n * kLog2)); }
  double dyadic_mass_bound(double n) const { return mass_K * std::pow(n + 1.0, mass_p); }
};

// g_k(t) = log^k(t+2)/(t+2), G_k(t) = log^{k+1}(t)/(k+1)
inline WeightFamily weight_gk(int k) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "g_k needs k >= 0");
  WeightFamily w;
  w.descriptor = "gk:k=" + std::to_string(k);
  const double kk = k;
  w.g = [kk](double t) { return std::pow(std::log(t + 2.0), kk) / (t + 2.0); };
  w.log_tg_exp = [kk](double x) {
    // t/(t+2) and log(t+2) written with log1p to survive large x
    double l1 = (x > 0.0) ? std::log1p(2.0 * std::exp(-x)) : std::log(std::exp(x) + 2.0) - x;
    double logy = x + l1;
    return -l1 + kk * std::log(logy);
  };
  w.G = [kk](double t) { return t <= 1.0 ? 0.0 : std::pow(std::log(t), kk + 1.0) / (kk + 1.0); };
  w.G_exp = [kk](double x) { return x <= 0.0 ? 0.0 : std::pow(x, kk + 1.0) / (kk + 1.0); };
  w.alpha = kk + 1.0;
  w.shift_a = std::max(0.0, std::exp(kk) - 2.0);
  w.mass_p = kk;
  w.mass_K = std::max(std::pow(kLog2, kk), std::pow(std::log(3.0), kk) / 3.0);
  w.log_power = LogPowerForm{1.0, k, 2.0};
  w.gk_index = k;
  return w;
}

// psi_n: constant 1/e^[n] on [0, e^[n]), log_[n](t)/t afterwards
inline WeightFamily weight_psi(int n) {
  if (n < 1 || n > 3)
    throw Error(ErrorCode::invalid_argument, "psi:n must be in 1..3 (e^[4] overflows double)");
  WeightFamily w;
  w.descriptor = "psi:n=" + std::to_string(n);
  // lc = log(c_n): c_1 = e, c_2 = e^e, c_3 = e^{e^e}
  const double lc = n == 1 ? 1.0 : (n == 2 ? std::exp(1.0) : std::exp(std::exp(1.0)));
  const double c = std::exp(lc);
  auto iter_log = [](double x, int times) {
    for (int i = 0; i < times; ++i) x = std::log(x);
    return x;
  };
  w.g = [=](double t) { return t < c ? 1.0 / c : iter_log(t, n) / t; };
  w.log_tg_exp = [=](double x) { return x < lc ? x - lc : std::log(iter_log(x, n - 1)); };
  auto Gx = [=](double x) -> double {
    if (x < lc) return std::exp(x - lc);
    switch (n) {
      case 1: return 1.0 + (x * x - 1.0) / 2.0;
      case 2: return 1.0 + x * std::log(x) - x;
      default: {
        const double e_e = std::exp(std::exp(1.0));
        return 1.0 + x * std::log(std::log(x)) - expint_ei(std::log(x)) - e_e + expint_ei(std::exp(1.0));
      }
    }
  };
  w.G_exp = Gx;
  w.G = [=](double t) { return t <= 0.0 ? 0.0 : Gx(std::log(t)); };
  w.alpha = n == 1 ? 2.0 : 1.0;
  w.shift_a = 0.0;
  w.mass_K = 1.0;
  w.mass_p = 1.0;
  return w;
}

// 1/e on [0, e), 1/(t log t) afterwards; G(e^x) = 1 + log x
inline WeightFamily weight_invlog() {
  WeightFamily w;
  w.descriptor = "invlog";
  const double e = std::exp(1.0);
  w.g = [e](double t) { return t < e ? 1.0 / e : 1.0 / (t * std::log(t)); };
  w.log_tg_exp = [](double x) { return x < 1.0 ? x - 1.0 : -std::log(x); };
  w.G_exp = [](double x) { return x < 1.0 ? std::exp(x - 1.0) : 1.0 + std::log(x); };
  w.G = [w](double t) { return t <= 0.0 ? 0.0 : w.G_exp(std::log(t)); };
  w.alpha = 0.0;
  w.mass_K = 1.0;
  w.mass_p = 0.0;
  return w;
}

// weights used by zoo-check and the property tests
inline std::vector<WeightFamily> weight_zoo() {
  return {weight_gk(0), weight_gk(1), weight_gk(2), weight_psi(1), weight_psi(2), weight_psi(3), weight_invlog()};
}

struct RvIndex {
  double index = 0.0;
  double spread = 0.0;
};

// log(f(lambda t)/f(t))/log(lambda) at the largest grid point; spread is the
// range of the same quantity over the trailing half of the grid.
inline RvIndex rv_index_estimate(const std::function<double(double)>& f, const std::vector<double>& t_grid,
                                 double lambda) {
  if (lambda <= 0.0 || lambda == 1.0) throw Error(ErrorCode::invalid_argument, "lambda must be > 0 and != 1");
  if (t_grid.empty()) return {};
  std::vector<double> est;
  for (double t : t_grid) est.push_back(std::log(f(lambda * t) / f(t)) / std::log(lambda));
  RvIndex r;
  r.index = est.back();
  const std::size_t from = est.size() / 2;
  auto [lo, hi] = std::minmax_element(est.begin() + from, est.end());
  r.spread = *hi - *lo;
  return r;
}

struct WeightInvariants {
  double x = 0.0;            // checks are made at t = e^x
  double cond1 = 0.0;        // g(2t)/g(t), limit 1/2
  double cond02 = 0.0;       // G(2t)/G(t), limit 1
  double gexp[3] = {};       // G(t^lambda)/G(t) / lambda^alpha for lambda = 2, 3, 1/2
  double worst = 0.0;        // largest relative deviation from the limits
  bool passed = false;
};

// The conditions are evaluated in log space at t = e^x so that they can be
// probed far beyond double range; the shift a is applied to g.
inline WeightInvariants check_weight_invariants(const WeightFamily& w, double x, double tol) {
  WeightInvariants r;
  r.x = x;
  const double xa = x;  // shift a is negligible against e^x for the x used here
  r.cond1 = std::exp(w.log_g_exp(xa + kLog2) - w.log_g_exp(xa));
  r.cond02 = w.G_exp(x + kLog2) / w.G_exp(x);
  const double lambdas[3] = {2.0, 3.0, 0.5};
  for (int i = 0; i < 3; ++i) r.gexp[i] = w.G_exp(lambdas[i] * x) / w.G_exp(x) / std::pow(lambdas[i], w.alpha);
  r.worst = std::max(std::abs(r.cond1 / 0.5 - 1.0), std::abs(r.cond02 - 1.0));
  for (double v : r.gexp) r.worst = std::max(r.worst, std::abs(v - 1.0));
  r.passed = r.worst <= tol;
  return r;
}

}  // namespace dixlab
