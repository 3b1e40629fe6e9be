#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "limits.hpp"
#include "sequence.hpp"
#include "spectral_core.hpp"
#include "summation.hpp"
#include "weight.hpp"

namespace dixlab {

// checkpoints n = 2^m - 1, m = m_min..m_max
struct Grid {
  int m_min = 4;
  int m_max = 24;

  std::vector<std::uint64_t> points() const {
    std::vector<std::uint64_t> out;
    for (int m = m_min; m <= m_max; ++m) out.push_back((std::uint64_t{1} << m) - 1);
    return out;
  }
};

// drift terms for S_n: powers of 1/log(n+1) up to the order of G_k, or 1/G(n+1)
inline DriftBasis partial_sum_basis(const WeightFamily& w) {
  DriftBasis b;
  if (w.gk_index) {
    for (int j = 1; j <= *w.gk_index + 1; ++j)
      b.push_back([j](double n) { return std::pow(std::log(n + 1.0), -j); });
  } else {
    auto G = w.G;
    b.push_back([G](double n) { return 1.0 / G(n + 1.0); });
  }
  return b;
}

inline std::string partial_sum_model(const WeightFamily& w) {
  if (w.gk_index) return "c + sum_{j=1..k+1} b_j / log^j(n+1)";
  return "c + b / G(n+1)";
}

namespace detail {

inline void require_available(const SpectralSequence& s, std::uint64_t end) {
  if (end > s.available())
    throw Error(ErrorCode::insufficient_prefix, s.descriptor + ": need " + std::to_string(end) + " terms, only " +
                                                    std::to_string(s.available()) + " enumerated");
}

// prefix sums sum_{j<e} lambda_j for every e in ends, one pass
inline std::map<std::uint64_t, cplx> prefix_map(const SpectralSequence& lambda, std::vector<std::uint64_t> ends,
                                                bool parallel) {
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::map<std::uint64_t, cplx> out;
  if (ends.empty()) return out;
  // finite-rank sequences stop contributing at the extent
  std::vector<std::uint64_t> clipped;
  for (auto e : ends) clipped.push_back(lambda.finite_rank() ? std::min(e, *lambda.extent) : e);
  detail::require_available(lambda, clipped.back());
  auto sums = prefix_sums_at<cplx>(clipped, [&](std::uint64_t j) { return lambda(j); }, parallel);
  for (std::size_t i = 0; i < ends.size(); ++i) out[ends[i]] = sums[i];
  return out;
}

inline ComplexLimit ratios_from_sums(const std::map<std::uint64_t, cplx>& sums, const WeightFamily& w,
                                     const Grid& grid, double tol) {
  std::vector<std::pair<double, cplx>> pts;
  for (auto n : grid.points()) {
    const double G = w.G(double(n) + 1.0);
    pts.push_back({double(n), sums.at(n + 1) / G});
  }
  return estimate_limit(pts, partial_sum_basis(w), tol, partial_sum_model(w));
}

}  // namespace detail

// S_n = (1/G(n+1)) sum_{j<=n} lambda_j on the grid, with the drift fit
inline ComplexLimit partial_sum_ratios(const SpectralSequence& lambda, const WeightFamily& w, const Grid& grid,
                                       double tol = 1e-2, bool parallel = false) {
  std::vector<std::uint64_t> ends;
  for (auto n : grid.points()) ends.push_back(n + 1);
  return detail::ratios_from_sums(detail::prefix_map(lambda, ends, parallel), w, grid, tol);
}

struct DyadicProfile {
  std::vector<cplx> blocks;       // a_n
  std::vector<cplx> normalized;   // a_n / (2^n g(2^n))
  std::vector<double> errors;     // |a_n - true block sum| bound (0 for exact sums)
  WeightFamily weight;
  std::uint64_t n_max = 0;        // blocks.size() - 1
  std::uint64_t n_direct = 0;     // blocks 0..n_direct are direct sums
  // bound on sum of |lambda_j| past the last block, when known
  std::optional<double> tail_mass;
  // |a_n| <= growth_const * dyadic_mass_bound(n) assumed for blocks past n_max
  double growth_const = 0.0;
  std::string source;
};

namespace detail {

inline std::uint64_t modpow2(std::uint64_t n, std::uint64_t P) {
  std::uint64_t r = 1 % P, b = 2 % P;
  while (n) {
    if (n & 1) r = (unsigned __int128)r * b % P;
    b = (unsigned __int128)b * b % P;
    n >>= 1;
  }
  return r;
}

// 2^{-n} times the sum of w[j % P] over the 2^n indices of block n, any n
inline cplx phase_block_fraction(const std::vector<cplx>& w, std::uint64_t n) {
  if (w.empty()) return 1.0;
  if (n < 62) return phase_range_sum(w, block_first(n), block_first(n + 1) - 1) / std::ldexp(1.0, int(n));
  const std::uint64_t P = w.size();
  const std::uint64_t rem = modpow2(n, P);                   // 2^n mod P
  const std::uint64_t start = (rem + P - 1) % P;             // (2^n - 1) mod P
  cplx per = 0.0;
  for (auto v : w) per += v;
  const double inv = std::exp2(-double(n));
  cplx total = per / double(P) * (1.0 - double(rem) * inv);
  for (std::uint64_t i = 0; i < rem; ++i) total += w[(start + i) % P] * inv;
  return total;
}

// analytic block n from a smooth model: integral in v = log2 u over the
// midpoint cells of the block, plus the periodic-phase correction
inline std::pair<cplx, double> smooth_block(const SmoothModel& m, std::uint64_t n) {
  const double nn = double(n);
  const double v_lo = nn + std::log1p(-1.5 * std::exp2(-nn)) / kLog2;
  const double v_hi = nn + 1.0 + std::log1p(-1.5 * std::exp2(-nn - 1.0)) / kLog2;
  auto sc = m.scaled;
  const double F = kLog2 * boost::math::quadrature::gauss<double, 20>::integrate(sc, v_lo, v_hi);
  double err = m.block_error(n);
  if (m.phase.empty()) return {F, err};
  auto [mean, swing] = phase_mean_and_swing(m.phase);
  // block start A = 2^n - 1 as a double; uint64 indices wrap past n = 63
  const double A = n < 64 ? double(block_first(n)) : std::exp2(nn);
  const double vA = n < 64 ? std::log2(std::max(A, 1.0)) : nn;
  const bool mono = m.monotone_from != UINT64_MAX && (n >= 64 || block_first(n) >= m.monotone_from);
  const bool convex = m.convex_from != UINT64_MAX && (n >= 64 || block_first(n) >= m.convex_from) && n >= 1;
  auto f_at = [&](double v) { return sc(v) * std::exp2(-v); };
  if (!convex) {
    double fA = std::numeric_limits<double>::infinity();
    if (mono) fA = f_at(vA);
    return {mean * F, std::abs(mean) * err + swing * fA};
  }
  // Summation by parts twice. With T(j) = sum_{i<j}(w_i - mean) minus its period
  // average, the block sum is mean*F + T(B+1) f(B) - T(A) f(A) + R, and for convex
  // decreasing f, |R| <= 2 swing(T) |f'(A)|.
  const std::uint64_t P = m.phase.size();
  std::vector<cplx> T(P + 1, 0.0);
  for (std::uint64_t i = 0; i < P; ++i) T[i + 1] = T[i] + (m.phase[i] - mean);
  cplx Tbar = 0.0;
  for (std::uint64_t i = 0; i < P; ++i) Tbar += T[i];
  Tbar /= double(P);
  for (auto& t : T) t -= Tbar;
  std::vector<cplx> Tp(T.begin(), T.begin() + P);
  auto [tmean, tswing] = phase_mean_and_swing(Tp);
  (void)tmean;
  const std::uint64_t a_mod = (modpow2(n, P) + P - 1) % P;      // A mod P
  const std::uint64_t b1_mod = (modpow2(n + 1, P) + P - 1) % P;  // (B+1) mod P
  const double vB = n < 63 ? std::log2(double(block_first(n + 1) - 1)) : nn + 1.0;
  const double fA = f_at(vA), fB = f_at(vB);
  // |f'(A)| = f(A)/A |1 - (d ln sc/dv)/ln2|, slope from a central difference with a 2x margin
  const double h = 1e-3;
  const double slope = (std::log(std::abs(sc(vA + h))) - std::log(std::abs(sc(vA - h)))) / (2.0 * h);
  const double dfA = 2.0 * fA / A * (1.0 + std::abs(slope) / kLog2);
  const cplx est = mean * F + T[b1_mod] * fB - T[a_mod] * fA;
  double bound = std::abs(mean) * err + 2.0 * tswing * dfA;
  if (!std::isfinite(bound)) bound = std::abs(mean) * err + swing * fA;
  return {est, bound};
}

}  // namespace detail

inline double w_mass(const WeightFamily& w, std::uint64_t n) { return w.dyadic_mass(double(n)); }

// a_n = sum_{j=2^n-1}^{2^{n+1}-2} lambda_j for n <= n_max. Blocks up to
// n_direct are summed term by term, later ones come from the analytic model.
inline DyadicProfile dyadic_profile(const SpectralSequence& lambda, const WeightFamily& w, std::uint64_t n_max,
                                    std::uint64_t n_direct = 24, bool parallel = false) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "dyadic_profile needs n_max >= 1");
  DyadicProfile p;
  p.weight = w;
  n_direct = std::min(n_direct, n_max);
  // largest fully available direct block
  const std::uint64_t avail = lambda.available();
  while (n_direct > 0 && block_first(n_direct + 1) > avail) --n_direct;
  if (block_first(1) > avail) throw Error(ErrorCode::insufficient_prefix, lambda.descriptor + ": no complete block");
  p.n_direct = n_direct;
  std::vector<std::uint64_t> ends;
  for (std::uint64_t n = 0; n <= n_direct + 1; ++n) ends.push_back(block_first(n));
  auto sums = detail::prefix_map(lambda, ends, parallel);
  for (std::uint64_t n = 0; n <= n_direct; ++n) {
    p.blocks.push_back(sums[block_first(n + 1)] - sums[block_first(n)]);
    p.errors.push_back(0.0);
  }
  p.source = "direct";
  const bool beyond = n_max > n_direct;
  if (beyond && lambda.finite_rank() && block_first(n_direct + 1) >= *lambda.extent) {
    for (std::uint64_t n = n_direct + 1; n <= n_max; ++n) {
      p.blocks.push_back(0.0);
      p.errors.push_back(0.0);
    }
    p.source = "direct+finite-rank";
  } else if (beyond && lambda.blocks) {
    const auto& bm = *lambda.blocks;
    for (std::uint64_t n = n_direct + 1; n <= n_max; ++n) {
      // x_n 2^n g(2^n) times the mean of the phase over the block
      p.blocks.push_back(bm.x(n) * w_mass(bm.weight, n) * detail::phase_block_fraction(bm.phase, n));
      p.errors.push_back(0.0);
    }
    p.source = "direct+block-model";
  } else if (beyond && lambda.smooth) {
    const auto& sm = *lambda.smooth;
    const std::uint64_t count = n_max - n_direct;
    std::vector<std::pair<cplx, double>> tmp(count);
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t i = lo; i < hi; ++i) tmp[i] = detail::smooth_block(sm, n_direct + 1 + i);
    };
    if (parallel && count > 4096) {
      const unsigned nt = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
      std::vector<std::future<void>> jobs;
      const std::uint64_t step = (count + nt - 1) / nt;
      for (unsigned t = 0; t < nt; ++t)
        jobs.push_back(std::async(std::launch::async, work, std::min(count, t * step), std::min(count, (t + 1) * step)));
      for (auto& j : jobs) j.get();
    } else {
      work(0, count);
    }
    for (auto& [b, e] : tmp) {
      p.blocks.push_back(b);
      p.errors.push_back(e);
    }
    p.source = "direct+smooth-model";
  }
  p.n_max = p.blocks.size() - 1;
  for (std::uint64_t n = 0; n <= p.n_max; ++n) {
    const double mass = w.dyadic_mass(double(n));
    p.normalized.push_back(p.blocks[n] / mass);
    const double bound = w.dyadic_mass_bound(double(n));
    p.growth_const = std::max(p.growth_const, (std::abs(p.blocks[n]) + p.errors[n]) / bound);
  }
  p.growth_const *= 2.0;
  if (lambda.finite_rank() && block_first(p.n_max + 1) >= *lambda.extent) {
    p.tail_mass = 0.0;
  } else if (lambda.power_total && p.n_max == p.n_direct) {
    const double total = lambda.power_total(1.0);
    if (std::isfinite(total)) {
      NeumaierSum<double> s;
      const std::uint64_t end = block_first(p.n_max + 1);
      for (std::uint64_t j = 0; j < end; ++j) s.add(std::abs(lambda(j)));
      p.tail_mass = std::max(0.0, total - s.value()) + 1e-15 * total;
    }
  }
  return p;
}

struct DixmierInterval {
  double inf = 0.0, sup = 0.0;           // real part
  double im_inf = 0.0, im_sup = 0.0;     // imaginary part
  int cesaro_level = 0;                  // smoothing level of the chosen real window
  int im_cesaro_level = 0;
  LimitEstimate re_levels[3];
  LimitEstimate im_levels[3];
  double width() const { return std::max(sup - inf, im_sup - im_inf); }
};

namespace detail {

inline int tightest_stable(const std::vector<std::pair<double, double>>& pts, const DriftBasis& basis, double tol,
                           LimitEstimate (&levels)[3]) {
  std::vector<double> vals;
  for (auto& p : pts) vals.push_back(p.second);
  for (int L = 0; L < 3; ++L) {
    std::vector<std::pair<double, double>> q;
    for (std::size_t i = 0; i < pts.size(); ++i) q.push_back({pts[i].first, vals[i]});
    levels[L] = estimate_limit(q, basis, tol);
    vals = cesaro_means(vals);
  }
  int best = 0;
  const double c0 = levels[0].value();
  for (int L = 1; L < 3; ++L) {
    const bool stable = std::abs(levels[L].value() - c0) <= tol * std::max(1.0, std::abs(c0));
    if (stable && levels[L].width() < levels[best].width()) best = L;
  }
  return best;
}

}  // namespace detail

inline DixmierInterval dixmier_interval_from(const ComplexLimit& ratios, const WeightFamily& w, double tol) {
  DixmierInterval d;
  auto basis = partial_sum_basis(w);
  d.cesaro_level = detail::tightest_stable(ratios.re.checkpoints, basis, tol, d.re_levels);
  d.im_cesaro_level = detail::tightest_stable(ratios.im.checkpoints, basis, tol, d.im_levels);
  d.inf = d.re_levels[d.cesaro_level].window_inf;
  d.sup = d.re_levels[d.cesaro_level].window_sup;
  d.im_inf = d.im_levels[d.im_cesaro_level].window_inf;
  d.im_sup = d.im_levels[d.im_cesaro_level].window_sup;
  return d;
}

inline DixmierInterval dixmier_interval(const SpectralSequence& lambda, const WeightFamily& w, const Grid& grid,
                                        double tol = 1e-2, bool parallel = false) {
  return dixmier_interval_from(partial_sum_ratios(lambda, w, grid, tol, parallel), w, tol);
}

struct TraceReport {
  WeightFamily weight;
  Grid grid;
  double tolerance = 1e-2;
  ComplexLimit partial_sum_estimate;
  DyadicProfile dyadic_profile;
  DixmierInterval interval;
  Verdict measurable = Verdict::inconclusive;
  std::optional<cplx> value;
  std::vector<std::string> warnings;
  std::string sequence;
};

struct MeasurabilityResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<cplx> value;
};

// converged iff the interval is narrower than the tolerance; the value is the
// drift-corrected extrapolation and must agree with the interval midpoint
inline MeasurabilityResult measurability_verdict(const TraceReport& r, double tol) {
  MeasurabilityResult m;
  const auto& ps = r.partial_sum_estimate;
  const cplx mid{0.5 * (r.interval.inf + r.interval.sup), 0.5 * (r.interval.im_inf + r.interval.im_sup)};
  const double scale = std::max(1.0, std::abs(mid));
  const bool narrow = (r.interval.sup - r.interval.inf) <= tol * std::max(1.0, std::abs(mid.real())) &&
                      (r.interval.im_sup - r.interval.im_inf) <= tol * std::max(1.0, std::abs(mid.imag()));
  const cplx extra = ps.value();
  if (narrow) {
    if (std::abs(extra.real() - mid.real()) > 2.0 * tol * scale || std::abs(extra.imag() - mid.imag()) > 2.0 * tol * scale)
      throw Error(ErrorCode::inconsistent_estimates, "interval midpoint and extrapolated partial sums disagree");
    m.verdict = Verdict::converged;
    m.value = extra;
    return m;
  }
  const auto& re = r.interval.re_levels[r.interval.cesaro_level];
  const auto& im = r.interval.im_levels[r.interval.im_cesaro_level];
  m.verdict = (re.verdict == Verdict::diverged_range || im.verdict == Verdict::diverged_range)
                  ? Verdict::diverged_range
                  : Verdict::inconclusive;
  return m;
}

inline TraceReport build_trace_report(const SpectralSequence& lambda, const WeightFamily& w, const Grid& grid,
                                      double tol = 1e-2, bool parallel = false) {
  TraceReport r;
  r.weight = w;
  r.grid = grid;
  r.tolerance = tol;
  r.sequence = lambda.descriptor;
  // membership is a warning only
  if (lambda.available() >= (1u << 16) || lambda.finite_rank()) {
    auto mem = ideal_membership(lambda, w, 1u << 16, 64);
    if (mem.verdict == Membership::outside_trend)
      r.warnings.push_back(lambda.descriptor + " does not look like a member of I_g for " + w.descriptor);
  }
  std::vector<std::uint64_t> ends;
  for (auto n : grid.points()) ends.push_back(n + 1);
  const std::uint64_t n_blocks = std::uint64_t(std::max(1, grid.m_max - 1));
  for (std::uint64_t n = 0; n <= n_blocks + 1; ++n) ends.push_back(block_first(n));
  auto sums = detail::prefix_map(lambda, ends, parallel);
  r.partial_sum_estimate = detail::ratios_from_sums(sums, w, grid, tol);
  DyadicProfile p;
  p.weight = w;
  p.n_direct = p.n_max = n_blocks;
  p.source = "direct";
  for (std::uint64_t n = 0; n <= n_blocks; ++n) {
    p.blocks.push_back(sums[block_first(n + 1)] - sums[block_first(n)]);
    p.errors.push_back(0.0);
    p.normalized.push_back(p.blocks.back() / w.dyadic_mass(double(n)));
  }
  r.dyadic_profile = std::move(p);
  r.interval = dixmier_interval_from(r.partial_sum_estimate, w, tol);
  auto m = measurability_verdict(r, tol);
  r.measurable = m.verdict;
  r.value = m.value;
  return r;
}

struct BanachSample {
  double t = 0.0;
  cplx value = 0.0;
  double tail_bound = 0.0;   // bound on the normalized truncation error
  std::uint64_t terms = 0;
};

enum class BanachForm { simplified, exponent };

namespace detail {

// scale * sum_n x_n 2^{-n/t} m(n) with m(n) <= K (n+1)^p, truncated with a
// certified incomplete-gamma tail bound
inline BanachSample dyadic_laplace(const BoundedSequence& x, const std::function<double(std::uint64_t)>& m, double K,
                                   double p, double t, double scale, double rel_tol) {
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_argument, "t must be > 0");
  const double sigma = kLog2 / t;
  auto tail = [&](double M) { return x.sup_norm * K * poly_exp_tail(M, p, sigma) * std::abs(scale); };
  std::uint64_t M = 64;
  if (x.support) M = *x.support;
  double tb = x.support ? 0.0 : tail(double(M));
  while (tb > rel_tol && M < (std::uint64_t{1} << 26)) {
    M *= 2;
    tb = tail(double(M));
  }
  if (tb > rel_tol)
    throw Error(ErrorCode::tail_bound_failure, "Banach integrand tail bound " + std::to_string(tb) + " above " +
                                                   std::to_string(rel_tol) + " at t = " + std::to_string(t));
  const double q = std::exp2(-1.0 / t);
  NeumaierSum<cplx> s;
  double r = 1.0;
  for (std::uint64_t n = 0; n < M; ++n) {
    s.add(x(n) * (r * m(n)));
    r *= q;
    if ((n & 1023) == 1023) r = std::exp2(-double(n + 1) / t);  // keep the power exact
  }
  BanachSample out;
  out.t = t;
  out.value = scale * s.value();
  out.tail_bound = tb;
  out.terms = M;
  return out;
}

}  // namespace detail

// (log2/Gamma(alpha+1)) (1/G(e^t)) sum x_n 2^{-n/t} 2^n g(2^n); the exponent form
// raises 2^n g(2^n) to the power 1 + 1/t
inline BanachSample banach_mean_integrand(const BoundedSequence& x, const WeightFamily& w, double t,
                                          BanachForm form = BanachForm::simplified, double rel_tol = 1e-6) {
  const double scale = kLog2 / std::tgamma(w.alpha + 1.0) / w.G_exp(t);
  const double e = form == BanachForm::exponent ? 1.0 + 1.0 / t : 1.0;
  auto m = [&w, e](std::uint64_t n) { return std::pow(w.dyadic_mass(double(n)), e); };
  return detail::dyadic_laplace(x, m, std::pow(w.mass_K, e), w.mass_p * e, t, scale, rel_tol);
}

// (log^{k+1}2 / k!) t^{-(k+1)} sum x_n 2^{-n/t} (n+1)^k
inline BanachSample bk_integrand(const BoundedSequence& x, int k, double t, double rel_tol = 1e-6) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "k must be >= 0");
  const double scale = std::pow(kLog2, k + 1) / std::tgamma(k + 1.0) / std::pow(t, k + 1);
  auto m = [k](std::uint64_t n) { return std::pow(double(n) + 1.0, k); };
  return detail::dyadic_laplace(x, m, 1.0, double(k), t, scale, rel_tol);
}

}  // namespace dixlab
