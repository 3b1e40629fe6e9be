#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "limits.hpp"
#include "sequence.hpp"
#include "spectral_core.hpp"
#include "summation.hpp"
#include "trace_lab.hpp"
#include "weight.hpp"

namespace dixlab {

enum class TailForm { none, geometric, incomplete_gamma_gk, integral_envelope, closed_total };

inline const char* to_string(TailForm f) {
  switch (f) {
    case TailForm::none: return "none";
    case TailForm::geometric: return "geometric";
    case TailForm::incomplete_gamma_gk: return "incomplete-gamma-gk";
    case TailForm::integral_envelope: return "integral-envelope";
    case TailForm::closed_total: return "closed-total";
  }
  return "?";
}

struct TailDescriptor {
  TailForm form = TailForm::none;
  std::vector<double> parameters;
};

// Upper bound for sum_{n >= N} f(n)^{1+s}, f(u) = c log^k(u+b)/(u+b), N past the
// monotone range: int_{N-1}^inf f^{1+s} in closed incomplete-gamma form.
inline double log_power_tail_integral(const LogPowerForm& lp, double s, double from) {
  const double q = 1.0 + s;
  const double a = lp.k * q + 1.0;
  const double x = s * std::log(from + lp.b);
  return std::exp(q * std::log(std::abs(lp.c)) + log_upper_gamma(a, x) - a * std::log(s));
}

inline double tail_descriptor_bound(const TailDescriptor& d, double N, double t) {
  const double s = 1.0 / t;
  switch (d.form) {
    case TailForm::incomplete_gamma_gk: {
      // parameters: c, k, b
      LogPowerForm lp{d.parameters.at(0), int(d.parameters.at(1)), d.parameters.at(2)};
      return log_power_tail_integral(lp, s, N - 1.0);
    }
    case TailForm::geometric: {
      // parameters: C, p, sigma per unit s: sum_{n>=N} C (n+1)^p e^{-sigma s n}
      return d.parameters.at(0) * poly_exp_tail(N, d.parameters.at(1), d.parameters.at(2) * s);
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

struct ZetaSample {
  double t = 0.0;
  cplx raw = 0.0;           // estimate of sum v_n mu(n)^{1+1/t}, tail estimate included
  double tail_bound = 0.0;  // bound on |raw - true value|
  cplx normalized = 0.0;    // raw / G(e^t)
  std::uint64_t terms = 0;
  TailForm tail = TailForm::none;
};

namespace detail {

inline double nonneg_value(const SpectralSequence& mu, std::uint64_t j) {
  const cplx z = mu(j);
  if (z.imag() != 0.0 || z.real() < 0.0)
    throw Error(ErrorCode::invalid_argument, mu.descriptor + ": zeta_value needs a nonnegative sequence");
  return z.real();
}

inline cplx direct_power_sum(const SpectralSequence& mu, const BoundedSequence& v, double q, std::uint64_t N,
                             bool parallel) {
  return chunked_sum<cplx>(
      0, N,
      [&](std::uint64_t j) {
        const double m = nonneg_value(mu, j);
        return m == 0.0 ? cplx(0.0) : v(j) * std::pow(m, q);
      },
      parallel);
}

}  // namespace detail

// sum_n v_n mu(n)^{1+1/t} with the truncation error certified to
// rel_tol * G(e^t); tail-bound-failure when no available tail form gets there
inline ZetaSample zeta_value(const SpectralSequence& mu, const std::optional<BoundedSequence>& v_opt,
                             const WeightFamily& w, double t, double rel_tol = 1e-6, bool parallel = false,
                             std::uint64_t max_terms = std::uint64_t{1} << 26) {
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_argument, "zeta_value needs t > 0");
  const BoundedSequence v = v_opt ? *v_opt : bounded_one();
  const double s = 1.0 / t, q = 1.0 + s;
  const double Gt = w.G_exp(t);
  const double budget = rel_tol * std::max(Gt, 1e-300);
  ZetaSample z;
  z.t = t;
  auto finish = [&](cplx raw, double tb, std::uint64_t terms, TailForm f) {
    z.raw = raw;
    z.tail_bound = tb;
    z.terms = terms;
    z.tail = f;
    z.normalized = raw / Gt;
    return z;
  };

  // finite rank, or v of finite support
  std::optional<std::uint64_t> finite;
  if (mu.finite_rank()) finite = *mu.extent;
  if (v.support) finite = finite ? std::min(*finite, *v.support) : *v.support;
  if (finite && *finite <= mu.available())
    return finish(detail::direct_power_sum(mu, v, q, *finite, parallel), 0.0, *finite, TailForm::none);

  // block-constant model: exact block sums, geometric-type tail in the block index
  if (mu.blocks && (v.periodic())) {
    const auto& bm = *mu.blocks;
    std::vector<cplx> phase = bm.phase;
    if (v.periodic()) {
      const auto& a = phase;
      const auto& b = v.period;
      if (a.empty()) {
        phase = b;
      } else {
        std::size_t P = std::lcm(a.size(), b.size());
        std::vector<cplx> out(P);
        for (std::size_t i = 0; i < P; ++i) out[i] = a[i % a.size()] * b[i % b.size()];
        phase = out;
      }
    }
    const WeightFamily& bw = bm.weight;
    const double C = std::pow(bm.x_sup * bw.mass_K, q);
    const double pexp = bw.mass_p * q;
    const double sigma = s * kLog2;
    std::uint64_t M = 64;
    double tb = C * poly_exp_tail(double(M), pexp, sigma);
    while (tb > budget && M < (std::uint64_t{1} << 26)) {
      M *= 2;
      tb = C * poly_exp_tail(double(M), pexp, sigma);
    }
    if (tb > budget)
      throw Error(ErrorCode::tail_bound_failure, mu.descriptor + ": block tail bound " + std::to_string(tb / Gt) +
                                                     " (relative) at t = " + std::to_string(t));
    NeumaierSum<cplx> acc;
    for (std::uint64_t n = 0; n < M; ++n) {
      const cplx xn = bm.x(n);
      if (xn.imag() != 0.0 || xn.real() < 0.0)
        throw Error(ErrorCode::invalid_argument, mu.descriptor + ": zeta_value needs nonnegative block values");
      if (xn.real() == 0.0) continue;
      // (x_n g(2^n))^q 2^n, kept in log space
      const double lg = bw.log_g_exp(double(n) * kLog2);
      const double lterm = q * (std::log(xn.real()) + lg) + double(n) * kLog2;
      acc.add(std::exp(lterm) * detail::phase_block_fraction(phase, n));
    }
    return finish(acc.value(), tb, M, TailForm::geometric);
  }

  const std::uint64_t avail = mu.available();
  const auto mv = phase_mean_and_swing(v.periodic() ? v.period : std::vector<cplx>{});
  const bool v_one = v.periodic() && v.period.size() == 1 && v.period[0] == cplx(1.0);

  // smooth log-power model: add the integral tail, bound the remainder
  if (mu.smooth && mu.smooth->log_power && mu.smooth->phase.empty()) {
    const auto& sm = *mu.smooth;
    const LogPowerForm lp = *sm.log_power;
    std::uint64_t N = std::max<std::uint64_t>(std::uint64_t{1} << 16, sm.monotone_from + 1);
    for (;;) {
      const double h = std::pow(lp(double(N)), q);
      const double I = log_power_tail_integral(lp, s, double(N));
      cplx est;
      double tb;
      if (v.periodic()) {
        // sum_{n>=N} f^q lies in [I, I + h]; the periodic part is an Abel-summation remainder
        est = mv.first * (I + 0.5 * h);
        tb = std::abs(mv.first) * 0.5 * h + mv.second * h;
      } else {
        est = 0.0;
        tb = v.sup_norm * (I + h);
      }
      if (tb <= budget || N >= max_terms || N >= avail) {
        if (tb > budget)
          throw Error(ErrorCode::tail_bound_failure, mu.descriptor + ": tail bound " + std::to_string(tb / Gt) +
                                                         " (relative) at t = " + std::to_string(t) + " with " +
                                                         std::to_string(N) + " terms");
        return finish(detail::direct_power_sum(mu, v, q, N, parallel) + est, tb, N, TailForm::incomplete_gamma_gk);
      }
      N *= 2;
    }
  }

  // closed total: sum of all mu^q known, the tail is total minus the prefix
  if (mu.power_total) {
    const double total = mu.power_total(q);
    if (std::isfinite(total)) {
      std::uint64_t N = std::min<std::uint64_t>(std::uint64_t{1} << 16, avail);
      for (;;) {
        const cplx direct = detail::direct_power_sum(mu, v, q, N, parallel);
        const cplx plain = v_one ? direct : detail::direct_power_sum(mu, bounded_one(), q, N, parallel);
        const double rest = std::max(0.0, total - plain.real());
        const double slack = 4e-16 * total * std::log2(double(N) + 2.0);
        cplx est = v_one ? cplx(rest) : cplx(0.0);
        double tb = v_one ? slack : v.sup_norm * (rest + slack);
        if (tb <= budget || N >= max_terms || N >= avail) {
          if (tb > budget)
            throw Error(ErrorCode::tail_bound_failure, mu.descriptor + ": closed-total tail bound " +
                                                           std::to_string(tb / Gt) + " (relative) at t = " +
                                                           std::to_string(t));
          return finish(direct + est, tb, N, TailForm::closed_total);
        }
        N = std::min(N * 2, avail);
      }
    }
  }

  // envelope: |mu_n| <= C g(n) with g of log-power form, integral comparison
  if (mu.envelope && mu.envelope->weight.log_power) {
    LogPowerForm lp = *mu.envelope->weight.log_power;
    lp.c *= mu.envelope->constant;
    std::uint64_t N = std::max<std::uint64_t>(std::uint64_t{1} << 16,
                                              std::uint64_t(std::ceil(std::exp(double(lp.k)))) + 2);
    N = std::min(N, avail);
    for (;;) {
      const double tb = v.sup_norm * log_power_tail_integral(lp, s, double(N) - 1.0);
      if (tb <= budget || N >= max_terms || N >= avail) {
        if (tb > budget)
          throw Error(ErrorCode::tail_bound_failure, mu.descriptor + ": integral-envelope bound " +
                                                         std::to_string(tb / Gt) + " (relative) at t = " +
                                                         std::to_string(t) + " with " + std::to_string(N) + " terms");
        return finish(detail::direct_power_sum(mu, v, q, N, parallel), tb, N, TailForm::integral_envelope);
      }
      N = std::min(N * 2, avail);
    }
  }
  throw Error(ErrorCode::tail_bound_failure, mu.descriptor + ": no tail form available");
}

inline std::vector<double> t_grid(int m_min = 6, int m_max = 14) {
  std::vector<double> g;
  for (int m = m_min; m <= m_max; ++m) g.push_back(std::ldexp(1.0, m));
  return g;
}

struct ResidueReport {
  ComplexLimit estimate;
  std::vector<ZetaSample> samples;
};

inline DriftBasis inverse_t_basis() {
  return {[](double t) { return 1.0 / t; }};
}

inline ResidueReport residue_estimate(const SpectralSequence& mu, const std::optional<BoundedSequence>& v,
                                      const WeightFamily& w, const std::vector<double>& ts, double rel_tol = 1e-6,
                                      double tol = 1e-2, bool parallel = false) {
  ResidueReport r;
  std::vector<std::pair<double, cplx>> pts;
  for (double t : ts) {
    r.samples.push_back(zeta_value(mu, v, w, t, rel_tol, parallel));
    pts.push_back({t, r.samples.back().normalized});
  }
  r.estimate = estimate_limit(pts, inverse_t_basis(), tol, "c + b/t");
  return r;
}

struct AbelSample {
  double r = 0.0;
  cplx value = 0.0;
  double bound = 0.0;  // normalized truncation + block error bound
  std::uint64_t blocks = 0;
};

// blocks needed so that sum_{n>M} (n+1)^p r^n is negligible next to (1-r)^{-(p+1)}
inline std::uint64_t abel_block_count(const WeightFamily& w, double r) {
  const double sigma = -std::log(r);
  double M = 64.0;
  for (int it = 0; it < 8; ++it) M = (40.0 + w.mass_p * std::log(M + 1.0) + (w.mass_p + 1.0) * std::log(1.0 / sigma)) / sigma;
  return std::uint64_t(std::ceil(M)) + 1;
}

// (1/G(2^{1/(1-r)})) sum_n a_n r^n
inline AbelSample abel_sum(const DyadicProfile& p, const WeightFamily& w, double r, double rel_tol = 1e-6) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::invalid_argument, "abel_sum needs r in (0,1)");
  const double Gn = w.G_exp(kLog2 / (1.0 - r));
  const double sigma = -std::log(r);
  AbelSample a;
  a.r = r;
  NeumaierSum<cplx> acc;
  double err = 0.0;
  double rn = 1.0;
  const std::uint64_t last = p.n_max;
  for (std::uint64_t n = 0; n <= last; ++n) {
    if (n % 256 == 0) rn = std::exp(-sigma * double(n));
    acc.add(p.blocks[n] * rn);
    if (p.errors[n] > 0.0) err += p.errors[n] * rn;
    rn *= r;
    if (rn == 0.0) break;
  }
  double tail = p.growth_const * w.mass_K * poly_exp_tail(double(last + 1), w.mass_p, sigma);
  if (p.tail_mass) tail = std::min(tail, std::exp(-sigma * double(last + 1)) * *p.tail_mass);
  a.value = acc.value() / Gn;
  a.bound = (err + tail) / Gn;
  a.blocks = last + 1;
  if (!(a.bound <= rel_tol * std::max(1.0, std::abs(a.value))))
    throw Error(ErrorCode::insufficient_blocks, "abel_sum at r = " + std::to_string(r) + ": bound " +
                                                    std::to_string(a.bound) + " with " + std::to_string(last + 1) +
                                                    " blocks");
  return a;
}

struct AbelScan {
  ComplexLimit estimate;
  std::vector<AbelSample> samples;
  std::vector<double> skipped;  // r values whose truncation could not be certified
};

inline std::vector<double> r_grid(int m_min = 2, int m_max = 14) {
  std::vector<double> g;
  for (int m = m_min; m <= m_max; ++m) g.push_back(1.0 - std::ldexp(1.0, -m));
  return g;
}

inline AbelScan abel_scan(const DyadicProfile& p, const WeightFamily& w, const std::vector<double>& rs,
                          double tol = 1e-2, double rel_tol = 1e-6) {
  AbelScan s;
  std::vector<std::pair<double, cplx>> pts;
  for (double r : rs) {
    try {
      s.samples.push_back(abel_sum(p, w, r, rel_tol));
      pts.push_back({r, s.samples.back().value});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_blocks) throw;
      s.skipped.push_back(r);
    }
  }
  s.estimate = estimate_limit(pts, {[](double r) { return 1.0 - r; }}, tol, "c + b(1-r)");
  return s;
}

// profile with enough blocks for the whole r grid
inline DyadicProfile abel_profile(const SpectralSequence& lambda, const WeightFamily& w, const std::vector<double>& rs,
                                  std::uint64_t n_direct = 24, bool parallel = false) {
  double rmax = 0.0;
  for (double r : rs) rmax = std::max(rmax, r);
  std::uint64_t need = rmax > 0.0 ? abel_block_count(w, rmax) : 1;
  if (!lambda.has_analytic_tail()) need = std::min<std::uint64_t>(need, 62);
  return dyadic_profile(lambda, w, std::max<std::uint64_t>(need, 1), n_direct, parallel);
}

struct TauberReport {
  ComplexLimit abel;
  ComplexLimit cesaro;
  double K = 0.0;
  bool abel_near = false;    // Abel side within tol/2 of c at the largest r
  bool cesaro_near = false;  // Cesaro side within tol of c/Gamma(alpha+1) at the largest n
  bool passes = false;
  cplx target = 0.0;
};

struct TauberGrids {
  int r_min = 2, r_max = 14;
  int n_min = 4, n_max = 22;
};

// |x_n| <= K max(n,1)^{alpha-1} on the prefix; K defaults to twice the largest
// ratio over the first 1024 terms
inline TauberReport tauberian_transfer_check(const std::function<cplx(std::uint64_t)>& x, double alpha, cplx c,
                                             const TauberGrids& g = {}, double tol = 1e-3,
                                             std::optional<double> K_opt = std::nullopt) {
  if (alpha < 0.0) throw Error(ErrorCode::invalid_argument, "alpha must be >= 0");
  auto env = [alpha](std::uint64_t n) { return std::pow(double(std::max<std::uint64_t>(n, 1)), alpha - 1.0); };
  double K = 0.0;
  if (K_opt) {
    K = *K_opt;
  } else {
    for (std::uint64_t n = 0; n < 1024; ++n) K = std::max(K, std::abs(x(n)) / env(n));
    K *= 2.0;
  }
  TauberReport rep;
  rep.K = K;
  const std::uint64_t nmax = std::uint64_t{1} << g.n_max;
  // Cesaro side and the growth check share one pass
  std::vector<std::pair<double, cplx>> ces;
  NeumaierSum<cplx> acc;
  std::uint64_t next_m = g.n_min;
  for (std::uint64_t n = 0; n <= nmax; ++n) {
    const cplx xn = x(n);
    if (std::abs(xn) > K * env(n) * (1.0 + 1e-12))
      throw Error(ErrorCode::growth_bound_violated,
                  "|x_" + std::to_string(n) + "| = " + std::to_string(std::abs(xn)) + " exceeds K n^(alpha-1)");
    acc.add(xn);
    if (n == (std::uint64_t{1} << next_m)) {
      ces.push_back({double(n), acc.value() / std::pow(double(n), alpha)});
      ++next_m;
    }
  }
  std::vector<std::pair<double, cplx>> ab;
  for (int m = g.r_min; m <= g.r_max; ++m) {
    const double r = 1.0 - std::ldexp(1.0, -m);
    const double sigma = -std::log(r);
    const double scale = std::pow(1.0 - r, alpha);
    std::uint64_t M = 1024;
    while (scale * K * poly_exp_tail(double(M), std::max(0.0, alpha - 1.0), sigma) > 1e-13 && M < (std::uint64_t{1} << 30))
      M *= 2;
    NeumaierSum<cplx> s;
    double rn = 1.0;
    for (std::uint64_t n = 0; n < M; ++n) {
      if (n % 256 == 0) rn = std::exp(-sigma * double(n));
      s.add(x(n) * rn);
      rn *= r;
    }
    ab.push_back({r, scale * s.value()});
  }
  rep.abel = estimate_limit(ab, {[](double r) { return 1.0 - r; }}, tol, "c + b(1-r)");
  rep.cesaro = estimate_limit(ces, {[](double n) { return 1.0 / n; }}, tol, "c + b/n");
  rep.target = c / std::tgamma(alpha + 1.0);
  const cplx a_last = ab.back().second, c_last = ces.back().second;
  rep.abel_near = std::abs(a_last.real() - c.real()) <= tol / 2 && std::abs(a_last.imag() - c.imag()) <= tol / 2;
  rep.cesaro_near = std::abs(c_last.real() - rep.target.real()) <= tol &&
                    std::abs(c_last.imag() - rep.target.imag()) <= tol;
  rep.passes = !rep.abel_near || rep.cesaro_near;
  return rep;
}

enum class Criterion { partial_sum, abel, zeta };

struct CriterionResult {
  bool ran = false;
  std::optional<ComplexLimit> estimate;
  cplx raw_value = 0.0;      // limit as measured
  cplx scaled_value = 0.0;   // divided by the criterion's constant
  double scale = 1.0;        // 1, (k+1)!, k!
  Verdict verdict = Verdict::inconclusive;
  std::string error;
};

struct EquivalenceOptions {
  Grid grid{};
  int t_min = 6, t_max = 14;
  int r_min = 2, r_max = 14;
  double tol = 1e-2;
  double rel_tol = 1e-6;
  bool partial_sum = true, abel = true, zeta = true;
  bool parallel = false;
};

struct EquivalenceReport {
  int k = 0;
  CriterionResult partial_sum, abel, zeta;
  bool consistent = false;
  bool contradiction = false;
  std::vector<std::string> notes;
};

namespace detail {

// VT in eigenvalue order; reorders a materialized prefix when v changes moduli
inline SpectralSequence ordered_product(const BoundedSequence& v, const SpectralSequence& mu, std::uint64_t n) {
  SpectralSequence vt = seq_weighted(v, mu);
  if (vt.kind != SequenceKind::diagonal) return vt;
  if (vt.finite_rank()) n = std::min(n, *vt.extent);
  auto vals = materialize(vt, n);
  auto idx = eigenvalue_order(vals);
  std::vector<cplx> sorted;
  for (auto i : idx) sorted.push_back(vals[i]);
  if (vt.finite_rank()) {
    auto s = seq_values(std::move(sorted), vt.descriptor + " (sorted)");
    return s;
  }
  SpectralSequence s;
  auto p = std::make_shared<const std::vector<cplx>>(std::move(sorted));
  s.gen = [p](std::uint64_t j) { return (*p)[j]; };
  s.extent = p->size();
  s.kind = SequenceKind::eigenvalue;
  s.descriptor = vt.descriptor + " (sorted prefix)";
  return s;
}

inline bool close(cplx a, cplx b, double tol) {
  const double sc = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  return std::abs(a.real() - b.real()) <= tol * sc && std::abs(a.imag() - b.imag()) <= tol * sc;
}

}  // namespace detail

inline EquivalenceReport equivalence_report(const BoundedSequence& v, const SpectralSequence& mu, int k,
                                            const EquivalenceOptions& o = {}) {
  if (k < 0) throw Error(ErrorCode::invalid_argument, "k must be >= 0");
  EquivalenceReport rep;
  rep.k = k;
  const WeightFamily w = weight_gk(k);
  const double kf = std::tgamma(k + 1.0), k1f = std::tgamma(k + 2.0);
  const std::uint64_t top = (std::uint64_t{1} << o.grid.m_max);
  SpectralSequence vt;
  try {
    vt = detail::ordered_product(v, mu, top);
  } catch (const Error& e) {
    rep.notes.push_back(e.what());
  }
  auto settle = [&](CriterionResult& c, const ComplexLimit& est, double scale) {
    c.ran = true;
    c.estimate = est;
    c.raw_value = est.value();
    c.scale = scale;
    c.scaled_value = c.raw_value / scale;
    c.verdict = est.verdict();
  };
  if (o.partial_sum && vt.gen) {
    try {
      // a finite enumerated prefix shortens the checkpoint grid
      Grid g = o.grid;
      const std::uint64_t avail = vt.available();
      if (avail < (std::uint64_t{1} << g.m_max)) {
        g.m_max = std::bit_width(avail) - 1;
        if (g.m_max < g.m_min + 2)
          throw Error(ErrorCode::insufficient_prefix, vt.descriptor + ": prefix too short for the partial-sum grid");
        rep.notes.push_back("partial sums: grid capped at 2^" + std::to_string(g.m_max) + " by the enumerated prefix");
      }
      settle(rep.partial_sum, partial_sum_ratios(vt, w, g, o.tol, o.parallel), 1.0);
    } catch (const Error& e) {
      rep.partial_sum.ran = true;
      rep.partial_sum.error = e.what();
    }
  }
  if (o.abel && vt.gen) {
    try {
      auto rs = r_grid(o.r_min, o.r_max);
      auto prof = abel_profile(vt, w, rs, std::min<std::uint64_t>(24, std::uint64_t(o.grid.m_max)), o.parallel);
      auto scan = abel_scan(prof, w, rs, o.tol, o.rel_tol);
      settle(rep.abel, scan.estimate, k1f);
      if (!scan.skipped.empty())
        rep.notes.push_back("abel: " + std::to_string(scan.skipped.size()) + " grid points lacked certified blocks");
    } catch (const Error& e) {
      rep.abel.ran = true;
      rep.abel.error = e.what();
    }
  }
  if (o.zeta) {
    try {
      std::vector<std::pair<double, cplx>> pts;
      for (double t : t_grid(o.t_min, o.t_max)) {
        auto z = zeta_value(mu, v, w, t, o.rel_tol, o.parallel);
        pts.push_back({t, z.raw / std::pow(t, k + 1)});
      }
      settle(rep.zeta, estimate_limit(pts, inverse_t_basis(), o.tol, "c + b/t"), kf);
    } catch (const Error& e) {
      rep.zeta.ran = true;
      rep.zeta.error = e.what();
    }
  }
  std::vector<const CriterionResult*> ran;
  for (auto* c : {&rep.partial_sum, &rep.abel, &rep.zeta})
    if (c->ran) ran.push_back(c);
  std::vector<const CriterionResult*> conv;
  for (auto* c : ran)
    if (c->error.empty() && c->verdict == Verdict::converged) conv.push_back(c);
  bool agree = true;
  for (std::size_t i = 0; i < conv.size(); ++i)
    for (std::size_t j = i + 1; j < conv.size(); ++j)
      if (!detail::close(conv[i]->scaled_value, conv[j]->scaled_value, 2.0 * o.tol)) agree = false;
  rep.contradiction = !agree;
  rep.consistent = !ran.empty() && ((conv.size() == ran.size() && agree) || conv.empty());
  return rep;
}

}  // namespace dixlab
