#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "limits.hpp"
#include "sequence.hpp"
#include "spectral_core.hpp"
#include "special.hpp"
#include "trace_lab.hpp"

namespace dixlab {

// num(x)/den(x) with x = base^{-s}; coefficients listed from x^0 upwards
struct ZetaFactor {
  double base = 1.0;
  std::vector<double> num{1.0};
  std::vector<double> den{1.0};
};

struct LengthGroup {
  double length = 0.0;
  double multiplicity = 0.0;
};

struct FractalString {
  std::string descriptor;
  std::uint64_t depth = 60;  // number of length groups enumerated by default
  // group m (m < group_count): equal lengths, nonincreasing in m
  std::function<LengthGroup(std::uint64_t)> group;
  std::optional<std::uint64_t> group_count;  // unset: infinitely many groups
  // sum over groups m >= M of multiplicity * length^s, real s above the abscissa
  std::function<double(std::uint64_t, double)> group_tail;
  // i-th largest length (all lengths, lazily)
  std::function<double(std::uint64_t)> length_at;
  std::optional<std::uint64_t> length_count;
  std::vector<ZetaFactor> closed;  // product of factors; empty when no closed form
  std::optional<double> total_length;
  double abscissa = -std::numeric_limits<double>::infinity();
  std::vector<FractalString> factors;  // nonempty for tensor products

  bool is_tensor() const { return !factors.empty(); }
  bool has_closed_form() const { return !closed.empty(); }
};

namespace detail {

inline cplx poly_eval(const std::vector<double>& c, cplx x) {
  cplx r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

inline cplx base_pow_neg(double base, cplx s) { return base == 1.0 ? cplx(1.0) : std::exp(-s * std::log(base)); }

}  // namespace detail

// denominator of the closed form at s; zeros are the poles
inline cplx closed_denominator(const FractalString& L, cplx s) {
  if (!L.has_closed_form()) throw Error(ErrorCode::invalid_argument, L.descriptor + ": no closed form");
  cplx d = 1.0;
  for (const auto& f : L.closed) d *= detail::poly_eval(f.den, detail::base_pow_neg(f.base, s));
  return d;
}

inline cplx closed_zeta(const FractalString& L, cplx s) {
  cplx z = 1.0;
  for (const auto& f : L.closed) {
    const cplx x = detail::base_pow_neg(f.base, s);
    z *= detail::poly_eval(f.num, x) / detail::poly_eval(f.den, x);
  }
  return z;
}

// Cantor string: length 3^{-m} with multiplicity 2^{m-1}, m >= 1
inline FractalString cantor_string(std::uint64_t depth = 60) {
  if (depth < 1) throw Error(ErrorCode::invalid_argument, "cantor_string needs depth >= 1");
  FractalString L;
  L.descriptor = "cantor";
  L.depth = depth;
  L.group = [](std::uint64_t m) { return LengthGroup{std::pow(3.0, -double(m + 1)), std::ldexp(1.0, int(m))}; };
  L.group_tail = [](std::uint64_t M, double s) {
    const double x = std::pow(3.0, -s);
    if (2.0 * x >= 1.0) return std::numeric_limits<double>::infinity();
    return std::ldexp(1.0, int(M)) * std::pow(x, double(M + 1)) / (1.0 - 2.0 * x);
  };
  // index j sits in group floor(log2(j+1))
  L.length_at = [](std::uint64_t j) { return std::pow(3.0, -double(std::bit_width(j + 1))); };
  L.closed = {ZetaFactor{3.0, {0.0, 1.0}, {1.0, -2.0}}};
  L.total_length = 1.0;
  L.abscissa = std::log(2.0) / std::log(3.0);
  return L;
}

// {b^{-a} : a >= 0}
inline FractalString lacunary_string(double b = 3.0, std::uint64_t depth = 60) {
  if (!(b > 1.0)) throw Error(ErrorCode::invalid_argument, "lacunary_string needs b > 1");
  FractalString L;
  std::ostringstream d;
  d << "lacunary:b=" << b;
  L.descriptor = d.str();
  L.depth = depth;
  L.group = [b](std::uint64_t m) { return LengthGroup{std::pow(b, -double(m)), 1.0}; };
  L.group_tail = [b](std::uint64_t M, double s) {
    const double x = std::pow(b, -s);
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(x, double(M)) / (1.0 - x);
  };
  L.length_at = [b](std::uint64_t j) { return std::pow(b, -double(j)); };
  L.closed = {ZetaFactor{b, {1.0}, {1.0, -1.0}}};
  L.total_length = b / (b - 1.0);
  L.abscissa = 0.0;
  return L;
}

// a single interval of length l
inline FractalString interval_string(double l = 1.0) {
  if (!(l > 0.0)) throw Error(ErrorCode::invalid_argument, "interval_string needs l > 0");
  FractalString L;
  std::ostringstream d;
  d << "interval:l=" << l;
  L.descriptor = d.str();
  L.depth = 1;
  L.group = [l](std::uint64_t) { return LengthGroup{l, 1.0}; };
  L.group_count = 1;
  L.group_tail = [](std::uint64_t, double) { return 0.0; };
  L.length_at = [l](std::uint64_t) { return l; };
  L.length_count = 1;
  L.closed = {l == 1.0 ? ZetaFactor{1.0, {1.0}, {1.0}} : ZetaFactor{1.0 / l, {0.0, 1.0}, {1.0}}};
  L.total_length = l;
  return L;
}

// lengths of L as a nonincreasing singular-value sequence
inline SpectralSequence string_lengths(const FractalString& L);

inline FractalString string_tensor(const FractalString& A, const FractalString& B, std::uint64_t N = 1u << 20) {
  FractalString L;
  L.descriptor = "tensor:" + A.descriptor + "*" + B.descriptor;
  L.depth = std::max(A.depth, B.depth);
  L.factors = {A, B};
  if (A.has_closed_form() && B.has_closed_form()) {
    L.closed = A.closed;
    L.closed.insert(L.closed.end(), B.closed.begin(), B.closed.end());
  }
  if (A.total_length && B.total_length) L.total_length = *A.total_length * *B.total_length;
  L.abscissa = std::max(A.abscissa, B.abscissa);
  std::uint64_t cap = N;
  if (A.length_count && B.length_count) cap = std::min<std::uint64_t>(cap, *A.length_count * *B.length_count);
  auto vals = std::make_shared<const std::vector<double>>(tensor_top(string_lengths(A), string_lengths(B), cap));
  L.length_at = [vals, desc = L.descriptor](std::uint64_t j) {
    if (j >= vals->size())
      throw Error(ErrorCode::insufficient_prefix, desc + ": length " + std::to_string(j) + " beyond enumerated prefix");
    return (*vals)[j];
  };
  L.length_count = vals->size();
  return L;
}

inline SpectralSequence string_lengths(const FractalString& L) {
  SpectralSequence s;
  auto f = L.length_at;
  s.gen = [f](std::uint64_t j) { return cplx(f(j)); };
  s.kind = SequenceKind::singular_value;
  if (L.length_count) {
    s.extent = *L.length_count;
    // tensor strings only know a prefix; simple strings are complete
    s.zero_beyond_extent = !L.is_tensor() || (L.factors[0].length_count && L.factors[1].length_count &&
                                              *L.length_count >= *L.factors[0].length_count * *L.factors[1].length_count);
  }
  if (L.has_closed_form()) {
    const FractalString copy = L;
    s.power_total = [copy](double p) {
      if (p <= copy.abscissa) return std::numeric_limits<double>::infinity();
      return closed_zeta(copy, p).real();
    };
  }
  s.descriptor = "string:" + L.descriptor;
  return s;
}

inline std::vector<double> string_prefix(const FractalString& L, std::uint64_t N) {
  std::vector<double> out;
  const std::uint64_t n = L.length_count ? std::min(N, *L.length_count) : N;
  out.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) out.push_back(L.length_at(j));
  return out;
}

// all lengths of the first `depth` groups; lengths listed in group order
inline std::vector<double> string_depth_prefix(const FractalString& L, std::uint64_t depth) {
  if (L.is_tensor()) throw Error(ErrorCode::invalid_argument, "depth prefix is defined for simple strings");
  std::vector<double> out;
  const std::uint64_t D = L.group_count ? std::min(depth, *L.group_count) : depth;
  for (std::uint64_t m = 0; m < D; ++m) {
    auto g = L.group(m);
    for (double i = 0; i < g.multiplicity; ++i) out.push_back(g.length);
  }
  return out;
}

struct StringZeta {
  cplx value = 0.0;
  double tail_bound = 0.0;  // |value - zeta| bound
  std::string method;       // closed-form or direct
  // direct sums only: value plus the summed geometric remainder of the group structure
  std::optional<cplx> completed;
};

namespace detail {

struct DirectSum {
  cplx partial = 0.0;
  double bound = 0.0;
  cplx completed = 0.0;
};

// direct sum over groups m < depth (every factor for tensors) with the excluded mass bound
inline DirectSum string_direct_full(const FractalString& L, cplx s, std::uint64_t depth) {
  if (L.is_tensor()) {
    auto a = string_direct_full(L.factors[0], s, depth);
    auto b = string_direct_full(L.factors[1], s, depth);
    // |Z1 Z2 - S1 S2| <= |S1| T2 + T1 |S2| + T1 T2
    return {a.partial * b.partial, std::abs(a.partial) * b.bound + a.bound * std::abs(b.partial) + a.bound * b.bound,
            a.completed * b.completed};
  }
  const std::uint64_t D = L.group_count ? std::min(depth, *L.group_count) : depth;
  NeumaierSum<cplx> acc;
  for (std::uint64_t m = 0; m < D; ++m) {
    auto g = L.group(m);
    acc.add(g.multiplicity * std::exp(s * std::log(g.length)));
  }
  const bool done = L.group_count && D >= *L.group_count;
  const double tail = done ? 0.0 : L.group_tail(D, s.real());
  // the remainder itself, exact for geometric group structures at real s
  cplx rest = 0.0;
  if (!done) {
    if (s.imag() == 0.0) {
      rest = tail;
    } else {
      NeumaierSum<cplx> r;
      for (std::uint64_t m = D; m < D + 1000; ++m) {
        if (L.group_count && m >= *L.group_count) break;
        auto g = L.group(m);
        const cplx term = g.multiplicity * std::exp(s * std::log(g.length));
        if (!std::isfinite(std::abs(term))) break;
        r.add(term);
        if (std::abs(term) < 1e-18 * std::abs(r.value())) break;
      }
      rest = r.value();
    }
  }
  return {acc.value(), tail, acc.value() + rest};
}

inline std::pair<cplx, double> string_direct(const FractalString& L, cplx s, std::uint64_t depth) {
  auto d = string_direct_full(L, s, depth);
  return {d.partial, d.bound};
}

inline void require_above_abscissa(const FractalString& L, cplx s) {
  if (!(s.real() > L.abscissa)) {
    std::ostringstream m;
    m << L.descriptor << ": Re(s) = " << s.real() << " not above the abscissa " << L.abscissa;
    throw Error(ErrorCode::abscissa_violation, m.str());
  }
}

}  // namespace detail

inline StringZeta geometric_zeta_direct(const FractalString& L, cplx s, std::optional<std::uint64_t> depth = std::nullopt) {
  detail::require_above_abscissa(L, s);
  auto d = detail::string_direct_full(L, s, depth.value_or(L.depth));
  return {d.partial, d.bound, "direct", d.completed};
}

inline StringZeta geometric_zeta(const FractalString& L, cplx s, double rel_tol = 1e-12) {
  detail::require_above_abscissa(L, s);
  if (L.has_closed_form()) return {closed_zeta(L, s), 0.0, "closed-form"};
  auto r = geometric_zeta_direct(L, s);
  if (!(r.tail_bound <= rel_tol * std::max(1.0, std::abs(r.value)))) {
    std::ostringstream m;
    m << L.descriptor << ": truncated zeta tail bound " << r.tail_bound << " above tolerance";
    throw Error(ErrorCode::tail_bound_failure, m.str());
  }
  return r;
}

// sum over Dirichlet frequencies k pi / l of (l/(k pi))^s
inline StringZeta spectral_zeta(const FractalString& L, cplx s, double rel_tol = 1e-12) {
  if (!(s.real() > 1.0)) throw Error(ErrorCode::abscissa_violation, "spectral zeta needs Re(s) > 1");
  auto g = geometric_zeta(L, s, rel_tol);
  const cplx f = riemann_zeta(s) * std::exp(-s * std::log(std::numbers::pi));
  return {g.value * f, g.tail_bound * std::abs(f), g.method};
}

// Direct double sum over groups m < depth and k <= K, with certified remainders;
// uses no zeta values except the bound zeta(s) <= 1 + 1/(s-1).
inline StringZeta spectral_zeta_direct(const FractalString& L, double s, std::uint64_t K = 1u << 16,
                                       std::optional<std::uint64_t> depth = std::nullopt) {
  if (!(s > 1.0)) throw Error(ErrorCode::abscissa_violation, "spectral zeta needs s > 1");
  detail::require_above_abscissa(L, s);
  const std::uint64_t D = depth.value_or(L.depth);
  NeumaierSum<double> ksum;
  for (std::uint64_t k = K; k >= 1; --k) ksum.add(std::pow(double(k), -s));
  const double pis = std::pow(std::numbers::pi, -s);
  auto [S, T] = detail::string_direct(L, s, D);
  // every group contributes mult l^s pi^{-s} sum_{k<=K} k^{-s}, so the double sum factors
  // over the enumerated groups; k > K adds at most K^{1-s}/(s-1) per unit of l^s pi^{-s}
  const double val = S.real() * pis * ksum.value();
  const double ktail = S.real() * pis * std::pow(double(K), 1.0 - s) / (s - 1.0);
  const double gtail = T * pis * (1.0 + 1.0 / (s - 1.0));
  return {val, ktail + gtail, "direct"};
}

// eigenvalues of L^{-d}: (l/(k pi))^{2d}, the N largest
inline SpectralSequence string_power_spectrum(const FractalString& L, double d, std::uint64_t N) {
  if (!(d > 0.0 && d <= 1.0)) throw Error(ErrorCode::invalid_argument, "power spectrum needs d in (0,1]");
  auto freq = seq_scaled(1.0 / std::numbers::pi, seq_harmonic());
  freq.kind = SequenceKind::singular_value;
  auto top = tensor_top(string_lengths(L), freq, N);
  for (auto& v : top) v = std::pow(v, 2.0 * d);
  std::ostringstream desc;
  desc << "power:d=" << d << "," << L.descriptor;
  SpectralSequence s = seq_prefix(std::move(top), SequenceKind::singular_value, desc.str());
  if (L.has_closed_form()) {
    const FractalString copy = L;
    s.power_total = [copy, d](double q) {
      const double e = 2.0 * d * q;
      if (e <= 1.0 || e <= copy.abscissa) return std::numeric_limits<double>::infinity();
      return closed_zeta(copy, e).real() * riemann_zeta(e) * std::pow(std::numbers::pi, -e);
    };
  }
  return s;
}

// ---------------------------------------------------------------------------
// Laplacian models

struct LaplacianModel {
  std::string source;  // fractal-string, counting-asymptotic or explicit
  std::function<double(std::uint64_t)> eigen;  // nondecreasing
  std::optional<std::uint64_t> count;          // number of known eigenvalues
  // counting asymptotic N(lambda) = C lambda log^{n-1} lambda for the model's eigenvalues
  int n = 0;
  double C = 0.0;    // C_n for counting-asymptotic models
  double c_n = 0.0;  // constant of the Laplacian counting function c_n t^{n/2} log^{n-1} t
  bool has_counting() const { return C > 0.0; }
};

inline double laplacian_C(int n) {
  return 1.0 / (std::tgamma(n / 2.0) * std::pow(std::numbers::pi, n / 2.0) * std::tgamma(double(n)));
}

// lambda with C lambda log^{n-1} lambda = target (n >= 2: lambda > 1)
inline double invert_counting(double C, int n, double target) {
  const double rhs = std::log(target / C);
  if (n == 1) return std::exp(rhs);
  // h(y) = y + (n-1) log y - rhs, increasing in y = log lambda > 0
  auto h = [&](double y) { return y + (n - 1) * std::log(y) - rhs; };
  double lo = 0.0, hi = std::max(2.0, rhs + 2.0);
  while (h(hi) < 0.0) hi *= 2.0;
  double y = std::clamp(rhs - (n - 1) * std::log(std::max(rhs, 1.0)), 0.5 * hi / (rhs + 2.0), hi);
  // Newton, falling back to bisection when a step leaves the bracket or stalls
  for (int it = 0; it < 200; ++it) {
    const double v = h(y);
    if (v > 0.0) hi = y; else lo = y;
    const double step = v / (1.0 + (n - 1) / y);
    if (std::abs(step) <= 1e-15 * y) { y -= step; break; }
    double next = y - step;
    if (!(next > lo && next < hi) || std::abs(step) > 0.5 * (hi - lo)) next = 0.5 * (lo + hi);
    y = next;
    if (hi - lo <= 1e-15 * y) break;
  }
  return std::exp(y);
}

// eigenvalues of (1 - Delta_n)^{n/2} synthesized from the leading counting term:
// lambda_j solves N(lambda_j) = j + 1
inline LaplacianModel counting_asymptotic_model(int n) {
  if (n < 2) throw Error(ErrorCode::unsupported_dimension, "counting-asymptotic model needs n >= 2");
  LaplacianModel m;
  m.source = "counting-asymptotic";
  m.n = n;
  m.C = laplacian_C(n);
  // substituting lambda = t^{n/2} into c_n t^{n/2} log^{n-1} t gives C_n = c_n (2/n)^{n-1}
  m.c_n = m.C * std::pow(n / 2.0, n - 1);
  const double C = m.C;
  m.eigen = [C, n](std::uint64_t j) { return invert_counting(C, n, double(j) + 1.0); };
  return m;
}

// lambda_j = j + 1; N(lambda) ~ lambda, i.e. n = 1, C = 1
inline LaplacianModel explicit_linear_model() {
  LaplacianModel m;
  m.source = "explicit";
  m.n = 1;
  m.C = 1.0;
  m.c_n = 1.0;
  m.eigen = [](std::uint64_t j) { return double(j) + 1.0; };
  return m;
}

// Dirichlet Laplacian of a fractal string: (k pi / l)^2, the N smallest
inline LaplacianModel fractal_laplacian(const FractalString& L, std::uint64_t N) {
  auto freq = seq_scaled(1.0 / std::numbers::pi, seq_harmonic());
  freq.kind = SequenceKind::singular_value;
  auto top = tensor_top(string_lengths(L), freq, N);
  auto vals = std::make_shared<std::vector<double>>();
  vals->reserve(top.size());
  for (double v : top) vals->push_back(1.0 / (v * v));
  LaplacianModel m;
  m.source = "fractal-string";
  m.count = vals->size();
  m.eigen = [vals](std::uint64_t j) {
    if (j >= vals->size()) throw Error(ErrorCode::insufficient_prefix, "laplacian eigenvalue beyond enumerated prefix");
    return (*vals)[j];
  };
  return m;
}

// brute-force oracle: all (k pi / l)^2 for the first `depth` groups and k <= K, sorted
inline std::vector<double> fractal_laplacian_bruteforce(const FractalString& L, std::uint64_t depth, std::uint64_t K) {
  std::vector<double> out;
  for (double l : string_depth_prefix(L, depth))
    for (std::uint64_t k = 1; k <= K; ++k) out.push_back(std::pow(double(k) * std::numbers::pi / l, 2.0));
  std::sort(out.begin(), out.end());
  return out;
}

struct PartitionSample {
  double t = 0.0;
  double partition = 0.0;  // sum_j e^{-t lambda_j}
  double ratio = 0.0;      // partition * t / |log t|^{n-1}
};

struct ZetaResidueSample {
  double s = 0.0;
  double zeta = 0.0;        // sum_j lambda_j^{-s}
  double normalized = 0.0;  // (s-1)^n zeta / (n-1)!
};

struct CountingPartitionReport {
  std::string source;
  int n = 0;
  double C = 0.0;
  double c_n = 0.0;
  std::uint64_t direct_terms = 0;
  std::vector<PartitionSample> partition;
  LimitEstimate partition_limit;
  std::vector<ZetaResidueSample> zeta;
  LimitEstimate zeta_limit;
  bool monotone = true;  // synthesized eigenvalues nondecreasing on the direct range
  bool partition_ok = false;
  bool zeta_ok = false;
};

inline std::vector<double> partition_t_grid(int m_min = 10, int m_max = 20) {
  std::vector<double> t;
  for (int m = m_min; m <= m_max; ++m) t.push_back(std::ldexp(1.0, -m));
  return t;
}

inline std::vector<double> residue_s_grid(int m_min = 4, int m_max = 14) {
  std::vector<double> s;
  for (int m = m_min; m <= m_max; ++m) s.push_back(1.0 + std::ldexp(1.0, -m));
  return s;
}

namespace detail {

// int_a^inf e^{-t x} dN(x) with dN = C (log^{n-1} x + (n-1) log^{n-2} x) dx
inline double counting_laplace_tail(const LaplacianModel& m, double a, double t) {
  const double C = m.C;
  if (m.n == 1) return C * std::exp(-t * a) / t;
  if (m.n == 2) return C * (std::exp(-t * a) * (std::log(a) + 1.0) + expint_e1(t * a)) / t;
  boost::math::quadrature::exp_sinh<double> q;
  const int n = m.n;
  auto f = [&](double u) {
    const double x = a + u;
    const double L = std::log(x);
    return std::exp(-t * u) * (std::pow(L, n - 1) + (n - 1) * std::pow(L, n - 2));
  };
  return C * std::exp(-t * a) * q.integrate(f);
}

// int_U^inf x^{-s} dN(x), eps = s - 1
inline double counting_mellin_tail(const LaplacianModel& m, double U, double s) {
  const double eps = s - 1.0;
  const double y = eps * std::log(U);
  double v = upper_gamma(double(m.n), y) / std::pow(eps, m.n);
  if (m.n >= 2) v += (m.n - 1) * upper_gamma(double(m.n - 1), y) / std::pow(eps, m.n - 1);
  return m.C * v;
}

}  // namespace detail

// Partition function and zeta residue of a model with a counting asymptotic.
// J eigenvalues are summed directly; the rest is the Laplace/Mellin integral
// of the counting function from N^{-1}(J + 1/2).
inline CountingPartitionReport counting_to_partition_check(const LaplacianModel& model, const std::vector<double>& ts,
                                                           const std::vector<double>& ss = residue_s_grid(),
                                                           double tol = 0.05, std::uint64_t J = 1u << 16) {
  if (!model.has_counting()) {
    if (model.n < 2 && model.source != "explicit")
      throw Error(ErrorCode::unsupported_dimension, model.source + " model carries no counting asymptotic");
  }
  if (model.source == "counting-asymptotic" && model.n < 2)
    throw Error(ErrorCode::unsupported_dimension, "counting-asymptotic model needs n >= 2");
  for (double t : ts)
    if (!(t > 0.0 && t <= 0.5)) throw Error(ErrorCode::invalid_argument, "partition grid needs 0 < t <= 1/2");
  CountingPartitionReport r;
  r.source = model.source;
  r.n = model.n;
  r.C = model.C;
  r.c_n = model.c_n;
  r.direct_terms = J;
  std::vector<double> lam(J);
  for (std::uint64_t j = 0; j < J; ++j) lam[j] = model.eigen(j);
  for (std::uint64_t j = 1; j < J; ++j)
    if (lam[j] < lam[j - 1]) r.monotone = false;
  const double a = model.source == "explicit" ? double(J) + 0.5 : invert_counting(model.C, model.n, double(J) + 0.5);
  std::vector<std::pair<double, double>> pts;
  for (double t : ts) {
    NeumaierSum<double> acc;
    for (std::uint64_t j = J; j-- > 0;) acc.add(std::exp(-t * lam[j]));
    PartitionSample p;
    p.t = t;
    p.partition = acc.value() + detail::counting_laplace_tail(model, a, t);
    p.ratio = p.partition * t / std::pow(std::abs(std::log(t)), model.n - 1);
    r.partition.push_back(p);
    pts.push_back({t, p.ratio});
  }
  // next-order term of the ratio is O(1/|log t|); none for n = 1 beyond O(t)
  DriftBasis pb = model.n == 1 ? DriftBasis{{[](double t) { return t; }}}
                               : DriftBasis{{[](double t) { return 1.0 / std::abs(std::log(t)); }}};
  r.partition_limit = estimate_limit(pts, pb, 1e-3, "C + b/|log t|");
  std::vector<std::pair<double, double>> zp;
  for (double s : ss) {
    if (!(s > 1.0)) throw Error(ErrorCode::invalid_argument, "zeta grid needs s > 1");
    NeumaierSum<double> acc;
    for (std::uint64_t j = J; j-- > 0;) acc.add(std::pow(lam[j], -s));
    ZetaResidueSample z;
    z.s = s;
    z.zeta = acc.value() + detail::counting_mellin_tail(model, a, s);
    z.normalized = std::pow(s - 1.0, model.n) * z.zeta / std::tgamma(double(model.n));
    r.zeta.push_back(z);
    zp.push_back({s, z.normalized});
  }
  DriftBasis zb{{[](double s) { return s - 1.0; }}};
  r.zeta_limit = estimate_limit(zp, zb, 1e-3, "C + b(s-1)");
  r.partition_ok = std::abs(r.partition_limit.value() - r.C) <= tol * r.C;
  r.zeta_ok = std::abs(r.zeta_limit.value() - r.C) <= tol * r.C;
  return r;
}

// operator eigenvalues mu_j = 1/lambda_j as a singular-value sequence
inline SpectralSequence laplacian_inverse_sequence(const LaplacianModel& m) {
  SpectralSequence s;
  auto e = m.eigen;
  s.gen = [e](std::uint64_t j) { return cplx(1.0 / e(j)); };
  s.kind = SequenceKind::singular_value;
  if (m.count) s.extent = *m.count;
  s.descriptor = "laplacian-inverse:" + m.source + ":n=" + std::to_string(m.n);
  return s;
}

// Drift of S_m / G_{n-1}(m) for a spectrum synthesized from C lambda log^{n-1} lambda:
// log lambda_m = l - (n-1) log l + ..., l = log(m/C), so the corrections are
// powers of log log m / log m and 1/log m rather than 1/log m alone.
inline DriftBasis counting_drift_basis() {
  auto L = [](double n) { return std::log(n + 1.0); };
  auto r = [L](double n) { return std::log(L(n)) / L(n); };
  return {r, [L](double n) { return 1.0 / L(n); }, [r](double n) { return r(n) * r(n); },
          [L, r](double n) { return r(n) / L(n); }, [L](double n) { return 1.0 / (L(n) * L(n)); }};
}

// partial sums of 1/lambda_j under G_{n-1}
inline ComplexLimit laplacian_dixmier(const LaplacianModel& m, const Grid& grid = {}, double tol = 1e-2,
                                      bool parallel = true) {
  if (m.n < 1) throw Error(ErrorCode::unsupported_dimension, "model has no dimension");
  auto r = partial_sum_ratios(laplacian_inverse_sequence(m), weight_gk(m.n - 1), grid, tol, parallel);
  if (m.source != "counting-asymptotic" || m.n < 2) return r;
  std::vector<std::pair<double, cplx>> pts;
  for (std::size_t i = 0; i < r.re.checkpoints.size(); ++i)
    pts.push_back({r.re.checkpoints[i].first, cplx(r.re.checkpoints[i].second, r.im.checkpoints[i].second)});
  return estimate_limit(pts, counting_drift_basis(), tol, "c + drift in loglog(n)/log(n), 1/log(n)");
}

}  // namespace dixlab
