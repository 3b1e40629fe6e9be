#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "error.hpp"

namespace dixlab {

using cplx = std::complex<double>;

inline constexpr double kLog2 = std::numbers::ln2;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Riemann zeta by Euler-Maclaurin: direct sum to N = 64 plus the integral,
// the half-endpoint term and four Bernoulli corrections. Valid for Re(s) > -7,
// s != 1; absolute error below 1e-12 for |Im s| up to ~20.
inline cplx riemann_zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorCode::invalid_argument, "riemann_zeta pole at s = 1");
  constexpr int N = 64;
  // B_2/2!, B_4/4!, B_6/6!, B_8/8!
  constexpr double bern[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  cplx sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(double(n)));
  const double lnN = std::log(double(N));
  const cplx Ns = std::exp(-s * lnN);  // N^{-s}
  sum += double(N) * Ns / (s - 1.0) + 0.5 * Ns;
  // term j: bern[j] * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  cplx rising = s;
  cplx pw = Ns / double(N);
  for (int j = 0; j < 4; ++j) {
    sum += bern[j] * rising * pw;
    rising *= (s + double(2 * j + 1)) * (s + double(2 * j + 2));
    pw /= double(N) * double(N);
  }
  return sum;
}

inline double riemann_zeta(double s) { return riemann_zeta(cplx(s, 0.0)).real(); }

// Upper incomplete gamma Gamma(a, x), not normalized.
inline double upper_gamma(double a, double x) {
  if (x <= 0.0) return std::tgamma(a);
  return boost::math::tgamma(a, x);
}

// log Gamma(a, x) for large arguments where Gamma(a, x) itself may overflow.
inline double log_upper_gamma(double a, double x) {
  if (x <= 0.0) return std::lgamma(a);
  double q = boost::math::gamma_q(a, x);
  if (q > 0.0) return std::log(q) + std::lgamma(a);
  // deep tail: Gamma(a,x) ~ x^{a-1} e^{-x} sum_j (a-1)...(a-j) / x^j, cut at the smallest term
  double sum = 1.0, term = 1.0;
  for (int j = 1; j < 60; ++j) {
    const double next = term * (a - double(j)) / x;
    if (next == 0.0 || std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
  }
  return (a - 1.0) * std::log(x) - x + std::log(sum);
}

// exponential integral Ei(x)
inline double expint_ei(double x) { return boost::math::expint(x); }

// E_1(x) for x > 0
inline double expint_e1(double x) { return boost::math::expint(1, x); }

// Bound on sum_{n >= M} (n+1)^p e^{-sigma n} for p >= 0, sigma > 0:
// int_M^inf (u+1)^p e^{-sigma u} du plus the largest term with n >= M
// (the summand is unimodal).
inline double poly_exp_tail(double M, double p, double sigma) {
  const double lig = sigma + log_upper_gamma(p + 1.0, sigma * (M + 1.0)) - (p + 1.0) * std::log(sigma);
  const double peak = std::max(M, p / sigma - 1.0);
  const double lmax = p * std::log(peak + 1.0) - sigma * peak;
  return std::exp(lig) + std::exp(lmax);
}

}  // namespace dixlab
