#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "sequence.hpp"
#include "summation.hpp"
#include "weight.hpp"

namespace dixlab {

// |values| sorted nonincreasing, stable in the original index
inline std::vector<double> eigen_to_singular(const std::vector<cplx>& prefix) {
  std::vector<double> m;
  m.reserve(prefix.size());
  for (auto v : prefix) m.push_back(std::abs(v));
  std::stable_sort(m.begin(), m.end(), std::greater<double>());
  return m;
}

// Deterministic eigenvalue order: modulus desc, argument asc in (-pi, pi], index asc.
inline std::vector<std::size_t> eigenvalue_order(const std::vector<cplx>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto arg = [](cplx z) {
    double a = std::arg(z);
    return a == -std::numbers::pi ? std::numbers::pi : a;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(v[a]), mb = std::abs(v[b]);
    if (ma != mb) return ma > mb;
    return arg(v[a]) < arg(v[b]);
  });
  return idx;
}

inline double quasi_norm_estimate(const SpectralSequence& mu, const WeightFamily& w, std::uint64_t N) {
  if (mu.kind != SequenceKind::singular_value)
    throw Error(ErrorCode::invalid_argument, "quasi_norm_estimate needs a singular-value sequence");
  if (N < 1) throw Error(ErrorCode::invalid_argument, "quasi_norm_estimate needs N >= 1");
  double best = 0.0;
  const std::uint64_t top = std::min(N, mu.finite_rank() ? *mu.extent : N);
  for (std::uint64_t n = 0; n < top; ++n) {
    const double g = w.g_shifted(double(n));
    if (!(g > 0.0)) throw Error(ErrorCode::invalid_argument, w.descriptor + ": g evaluates to 0 at n = " + std::to_string(n));
    best = std::max(best, std::abs(mu(n)) / g);
  }
  return best;
}

enum class Membership { inside, outside_trend, inconclusive };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside_trend: return "outside-trend";
    case Membership::inconclusive: return "inconclusive";
  }
  return "?";
}

struct MembershipReport {
  Membership verdict = Membership::inconclusive;
  double sup_ratio = 0.0;
  std::vector<std::pair<std::uint64_t, double>> window_max;  // (n at doubling, trailing max of mu/g)
  std::vector<double> growth;                                 // successive window_max ratios
};

// ratio mu(n)/g(n+a) scanned to N; the trailing max over [n - window, n) is
// recorded at every power of two n >= window
inline MembershipReport ideal_membership(const SpectralSequence& mu, const WeightFamily& w, std::uint64_t N,
                                         std::uint64_t window, double tolerance = 1e-2) {
  if (window < 2 || N < window) throw Error(ErrorCode::invalid_argument, "ideal_membership needs N >= window >= 2");
  MembershipReport r;
  std::vector<double> ratio(N);
  const std::uint64_t top = mu.finite_rank() ? std::min(N, *mu.extent) : N;
  for (std::uint64_t n = 0; n < N; ++n) {
    const double g = w.g_shifted(double(n));
    if (!(g > 0.0)) throw Error(ErrorCode::invalid_argument, w.descriptor + ": g evaluates to 0");
    ratio[n] = n < top ? std::abs(mu(n)) / g : 0.0;
    r.sup_ratio = std::max(r.sup_ratio, ratio[n]);
  }
  for (std::uint64_t n = 1; n <= N; n *= 2) {
    if (n < window) continue;
    double m = 0.0;
    for (std::uint64_t j = n - window; j < n; ++j) m = std::max(m, ratio[j]);
    r.window_max.push_back({n, m});
  }
  for (std::size_t i = 1; i < r.window_max.size(); ++i) {
    const double a = r.window_max[i - 1].second, b = r.window_max[i].second;
    r.growth.push_back(a > 0.0 ? b / a : (b > 0.0 ? std::numeric_limits<double>::infinity() : 1.0));
  }
  if (!std::isfinite(r.sup_ratio)) {
    r.verdict = Membership::outside_trend;
    return r;
  }
  const std::size_t k = r.growth.size();
  if (k >= 3 && r.growth[k - 1] >= 1.0 + tolerance && r.growth[k - 2] >= 1.0 + tolerance &&
      r.growth[k - 3] >= 1.0 + tolerance)
    r.verdict = Membership::outside_trend;
  else if (k >= 1 && r.growth[k - 1] < 1.0 + tolerance)
    r.verdict = Membership::inside;
  else
    r.verdict = Membership::inconclusive;
  return r;
}

namespace detail {

inline void require_sorted(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) throw Error(ErrorCode::invalid_argument, std::string(what) + ": negative entry");
    if (i > 0 && v[i] > v[i - 1]) throw Error(ErrorCode::invalid_argument, std::string(what) + ": not nonincreasing");
  }
}

}  // namespace detail

inline bool submajorize_check(const std::vector<double>& muS, const std::vector<double>& muT, std::size_t N) {
  detail::require_sorted(muS, "submajorize_check S");
  detail::require_sorted(muT, "submajorize_check T");
  if (muS.size() < N || muT.size() < N) throw Error(ErrorCode::invalid_argument, "submajorize_check: lists shorter than N");
  NeumaierSum<double> s, t;
  for (std::size_t n = 0; n < N; ++n) {
    s.add(muS[n]);
    t.add(muT[n]);
    const double slack = 1e-12 * std::max(std::abs(s.value()), std::abs(t.value()));
    if (s.value() > t.value() + slack) return false;
  }
  return true;
}

// Partial products compared as sums of logarithms; slack is relative (log space).
inline bool log_submajorize_check(const std::vector<double>& muS, const std::vector<double>& muT, std::size_t N,
                                  double slack = 1e-12) {
  for (double v : muS)
    if (v < 0.0) throw Error(ErrorCode::invalid_argument, "log_submajorize_check: negative entry in S");
  for (double v : muT)
    if (v < 0.0) throw Error(ErrorCode::invalid_argument, "log_submajorize_check: negative entry in T");
  if (muS.size() < N || muT.size() < N) throw Error(ErrorCode::invalid_argument, "log_submajorize_check: lists shorter than N");
  NeumaierSum<double> ls, lt;
  bool t_zero = false;
  for (std::size_t n = 0; n < N; ++n) {
    if (muS[n] == 0.0) return true;  // S product is 0 from here on
    if (muT[n] == 0.0) t_zero = true;
    if (t_zero) return false;
    ls.add(std::log(muS[n]));
    lt.add(std::log(muT[n]));
    const double scale = std::max(1.0, std::max(std::abs(ls.value()), std::abs(lt.value())));
    if (ls.value() > lt.value() + slack * scale) return false;
  }
  return true;
}

// (Cx)_n = (1/(n+1)) sum_{i<=n} x_i, prefix sums memoized behind a mutex
inline SpectralSequence cesaro(const SpectralSequence& x) {
  struct Memo {
    std::mutex mu;
    std::vector<cplx> prefix;
    NeumaierSum<cplx> acc;
  };
  auto memo = std::make_shared<Memo>();
  SpectralSequence s;
  s.gen = [memo, x](std::uint64_t n) -> cplx {
    std::lock_guard<std::mutex> lock(memo->mu);
    while (memo->prefix.size() <= n) {
      memo->acc.add(x(memo->prefix.size()));
      memo->prefix.push_back(memo->acc.value());
    }
    return memo->prefix[n] / (double(n) + 1.0);
  };
  s.kind = x.kind == SequenceKind::singular_value ? SequenceKind::singular_value : SequenceKind::diagonal;
  if (x.extent && !x.zero_beyond_extent) s.extent = x.extent;
  s.descriptor = "cesaro(" + x.descriptor + ")";
  return s;
}

// Cesaro means of a finite list
inline std::vector<double> cesaro_means(const std::vector<double>& v) {
  std::vector<double> out;
  NeumaierSum<double> s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.add(v[i]);
    out.push_back(s.value() / double(i + 1));
  }
  return out;
}

// Best-first enumeration of the N largest a_i b_j over i < na, j < nb.
// Both factors nonincreasing and nonnegative. Fewer than N values are
// returned when the grid is smaller than N.
inline std::vector<double> top_products(const std::function<double(std::uint64_t)>& a, std::uint64_t na,
                                        const std::function<double(std::uint64_t)>& b, std::uint64_t nb,
                                        std::uint64_t N) {
  std::vector<double> out;
  if (na == 0 || nb == 0 || N == 0) return out;
  out.reserve(std::min<std::uint64_t>(N, 1u << 26));
  using Item = std::tuple<double, std::uint64_t, std::uint64_t>;
  auto cmp = [](const Item& x, const Item& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) > std::get<1>(y);
    return std::get<2>(x) > std::get<2>(y);
  };
  std::vector<double> bcache;
  auto bval = [&](std::uint64_t j) {
    while (bcache.size() <= j) bcache.push_back(b(bcache.size()));
    return bcache[j];
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  std::vector<double> acache;
  auto aval = [&](std::uint64_t i) {
    while (acache.size() <= i) acache.push_back(a(acache.size()));
    return acache[i];
  };
  heap.push({aval(0) * bval(0), 0, 0});
  while (!heap.empty() && out.size() < N) {
    auto [v, i, j] = heap.top();
    heap.pop();
    out.push_back(v);
    if (j == 0 && i + 1 < na) heap.push({aval(i + 1) * bval(0), i + 1, 0});
    if (j + 1 < nb) heap.push({aval(i) * bval(j + 1), i, j + 1});
  }
  return out;
}

// Singular values of the tensor product of two finite-rank diagonal operators:
// the lists are the complete singular value sequences, so the answer is exact
// and padded with zeros past |muA| * |muB|.
inline std::vector<double> tensor_singular_values(const std::vector<double>& muA, const std::vector<double>& muB,
                                                  std::size_t N) {
  detail::require_sorted(muA, "tensor_singular_values A");
  detail::require_sorted(muB, "tensor_singular_values B");
  auto out = top_products([&](std::uint64_t i) { return muA[i]; }, muA.size(),
                          [&](std::uint64_t j) { return muB[j]; }, muB.size(), N);
  out.resize(N, 0.0);
  return out;
}

// Same with the lists read as prefixes of longer sequences whose next values
// are a_next and b_next; insufficient-prefix unless the missing products are
// provably no larger than the N-th value.
inline std::vector<double> tensor_singular_values(const std::vector<double>& muA, const std::vector<double>& muB,
                                                  std::size_t N, double a_next, double b_next) {
  auto out = tensor_singular_values(muA, muB, N);
  const double vN = N == 0 ? 0.0 : out[N - 1];
  const double a0 = muA.empty() ? 0.0 : muA[0], b0 = muB.empty() ? 0.0 : muB[0];
  if (a_next * b0 > vN || a0 * b_next > vN)
    throw Error(ErrorCode::insufficient_prefix, "tensor prefix too short for N = " + std::to_string(N));
  return out;
}

namespace detail {

// smallest P <= cap with f(P) * scale <= target (f nonincreasing), or cap
inline std::uint64_t cutoff_index(const std::function<double(std::uint64_t)>& f, double scale, double target,
                                  std::uint64_t cap) {
  if (cap == 0) return 0;
  std::uint64_t hi = 1;
  while (hi < cap && f(hi) * scale > target) hi *= 2;
  hi = std::min(hi, cap);
  std::uint64_t lo = hi / 2;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (f(mid) * scale > target)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace detail

// Top-N singular values of A (x) B for lazily generated factors.
inline std::vector<double> tensor_top(const SpectralSequence& A, const SpectralSequence& B, std::uint64_t N) {
  if (A.kind != SequenceKind::singular_value || B.kind != SequenceKind::singular_value)
    throw Error(ErrorCode::invalid_argument, "tensor factors must be singular-value sequences");
  auto a = [&](std::uint64_t i) { return A(i).real(); };
  auto b = [&](std::uint64_t j) { return B(j).real(); };
  const std::uint64_t capA = A.finite_rank() ? *A.extent : std::min<std::uint64_t>(A.available(), N);
  const std::uint64_t capB = B.finite_rank() ? *B.extent : std::min<std::uint64_t>(B.available(), N);
  std::uint64_t pa = std::min<std::uint64_t>(capA, 4096), pb = std::min<std::uint64_t>(capB, 4096);
  for (int pass = 0; pass < 4; ++pass) {
    auto out = top_products(a, pa, b, pb, N);
    const bool grid_small = out.size() < N;
    const double vN = grid_small ? 0.0 : out.back();
    const double a0 = capA ? a(0) : 0.0, b0 = capB ? b(0) : 0.0;
    // next values past the prefixes; finite-rank factors end in zeros
    const double an = pa < capA ? a(pa) : (A.finite_rank() ? 0.0 : (pa < A.available() ? a(pa) : a0));
    const double bn = pb < capB ? b(pb) : (B.finite_rank() ? 0.0 : (pb < B.available() ? b(pb) : b0));
    const bool okA = pa >= capA && A.finite_rank() ? true : an * b0 <= vN;
    const bool okB = pb >= capB && B.finite_rank() ? true : a0 * bn <= vN;
    if (okA && okB) {
      out.resize(N, 0.0);
      return out;
    }
    const bool can_grow = (!okA && pa < capA) || (!okB && pb < capB);
    if (!can_grow) break;
    if (!okA) pa = vN > 0.0 ? std::max(pa + 1, detail::cutoff_index(a, b0, vN, capA)) : capA;
    if (!okB) pb = vN > 0.0 ? std::max(pb + 1, detail::cutoff_index(b, a0, vN, capB)) : capB;
  }
  throw Error(ErrorCode::insufficient_prefix,
              "tensor(" + A.descriptor + "," + B.descriptor + "): factor prefixes cannot certify N = " + std::to_string(N));
}

inline SpectralSequence seq_tensor(const SpectralSequence& A, const SpectralSequence& B, std::uint64_t N) {
  auto vals = tensor_top(A, B, N);
  SpectralSequence s = seq_prefix(std::move(vals), SequenceKind::singular_value,
                                  "tensor:" + A.descriptor + "*" + B.descriptor);
  if (A.finite_rank() && B.finite_rank() && N >= *A.extent * *B.extent) s.zero_beyond_extent = true;
  if (A.power_total && B.power_total) {
    auto pa = A.power_total, pb = B.power_total;
    s.power_total = [pa, pb](double p) { return pa(p) * pb(p); };
  }
  return s;
}

struct SandwichReport {
  bool holds = false;
  std::size_t first_violation = SIZE_MAX;
  std::vector<double> tensor;  // mu(n, T (x) T0)
  std::vector<double> cesaro;  // (C mu(T))_n
};

// mu(T (x) T0) <= C mu(T) <= 2 mu(T (x) T0) pointwise for n < N, T0 = diag(1/(n+1))
inline SandwichReport tensor_sandwich(const SpectralSequence& T, std::uint64_t N) {
  SandwichReport r;
  r.tensor = tensor_top(T, seq_harmonic(), N);
  NeumaierSum<double> s;
  for (std::uint64_t n = 0; n < N; ++n) {
    s.add(T(n).real());
    r.cesaro.push_back(s.value() / double(n + 1));
  }
  r.holds = true;
  for (std::uint64_t n = 0; n < N; ++n) {
    const double slack = 1e-12 * std::max(1.0, r.cesaro[n]);
    if (r.tensor[n] > r.cesaro[n] + slack || r.cesaro[n] > 2.0 * r.tensor[n] + slack) {
      r.holds = false;
      r.first_violation = n;
      break;
    }
  }
  return r;
}

// muT is the complete singular value list of a finite-rank T
inline bool tensor_sandwich_check(const std::vector<double>& muT, std::uint64_t N) {
  detail::require_sorted(muT, "tensor_sandwich_check");
  std::vector<cplx> v(muT.begin(), muT.end());
  return tensor_sandwich(seq_values(std::move(v), "list"), N).holds;
}

inline bool tensor_sandwich_check(const SpectralSequence& muT, std::uint64_t N) { return tensor_sandwich(muT, N).holds; }

}  // namespace dixlab
