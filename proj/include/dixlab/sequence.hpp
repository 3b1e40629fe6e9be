#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "special.hpp"
#include "weight.hpp"

namespace dixlab {

enum class SequenceKind { singular_value, eigenvalue, diagonal };

inline const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::singular_value: return "singular-value";
    case SequenceKind::eigenvalue: return "eigenvalue-ordered";
    case SequenceKind::diagonal: return "diagonal";
  }
  return "?";
}

// Bounded sequence used as the diagonal of V or as the argument of D_g.
struct BoundedSequence {
  std::function<cplx(std::uint64_t)> gen;
  double sup_norm = 0.0;
  std::vector<cplx> period;               // nonempty: x_n = period[n % P] for every n
  std::optional<std::uint64_t> support;   // x_n = 0 for n >= support
  std::string descriptor;

  cplx operator()(std::uint64_t n) const { return gen(n); }
  bool periodic() const { return !period.empty(); }
  bool real_nonnegative() const {
    if (periodic()) {
      for (auto v : period)
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
      return true;
    }
    if (support) {
      for (std::uint64_t i = 0; i < *support; ++i) {
        cplx v = gen(i);
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
      }
      return true;
    }
    return false;
  }
};

inline BoundedSequence bounded_periodic(std::vector<cplx> period, std::string desc) {
  BoundedSequence b;
  double sup = 0.0;
  for (auto v : period) sup = std::max(sup, std::abs(v));
  auto p = std::make_shared<const std::vector<cplx>>(period);
  b.gen = [p](std::uint64_t n) { return (*p)[n % p->size()]; };
  b.sup_norm = sup;
  b.period = std::move(period);
  b.descriptor = std::move(desc);
  return b;
}

inline BoundedSequence bounded_one() { return bounded_periodic({1.0}, "one"); }
inline BoundedSequence bounded_const(double c) { return bounded_periodic({c}, "const:c=" + std::to_string(c)); }
inline BoundedSequence bounded_alternating() { return bounded_periodic({1.0, -1.0}, "alternating"); }

// e^{i pi n / q}, period 2q
inline BoundedSequence bounded_phase(int q) {
  if (q < 1) throw Error(ErrorCode::invalid_argument, "phase:q needs q >= 1");
  std::vector<cplx> p;
  for (int n = 0; n < 2 * q; ++n) p.push_back(std::polar(1.0, std::numbers::pi * n / q));
  return bounded_periodic(std::move(p), "phase:q=" + std::to_string(q));
}

inline BoundedSequence bounded_values(std::vector<cplx> values, std::string desc) {
  BoundedSequence b;
  double sup = 0.0;
  for (auto v : values) sup = std::max(sup, std::abs(v));
  auto p = std::make_shared<const std::vector<cplx>>(std::move(values));
  b.gen = [p](std::uint64_t n) { return n < p->size() ? (*p)[n] : cplx(0.0); };
  b.sup_norm = sup;
  b.support = p->size();
  b.descriptor = std::move(desc);
  return b;
}

inline BoundedSequence bounded_indicator(std::uint64_t i) {
  std::vector<cplx> v(i + 1, 0.0);
  v[i] = 1.0;
  return bounded_values(std::move(v), "indicator:i=" + std::to_string(i));
}

// arbitrary bounded generator, no structure known
inline BoundedSequence bounded_function(std::function<cplx(std::uint64_t)> f, double sup, std::string desc) {
  BoundedSequence b;
  b.gen = std::move(f);
  b.sup_norm = sup;
  b.descriptor = std::move(desc);
  return b;
}

// left shift (Sx)_n = x_{n+1}
inline BoundedSequence bounded_shift(const BoundedSequence& x) {
  if (x.periodic()) {
    std::vector<cplx> p(x.period.begin() + 1, x.period.end());
    p.push_back(x.period.front());
    return bounded_periodic(std::move(p), "shift(" + x.descriptor + ")");
  }
  BoundedSequence b = x;
  auto g = x.gen;
  b.gen = [g](std::uint64_t n) { return g(n + 1); };
  if (x.support) b.support = *x.support > 0 ? *x.support - 1 : 0;
  b.descriptor = "shift(" + x.descriptor + ")";
  return b;
}

// Smooth analytic model of the tail x_j = phase[j % P] * f(j), valid for all j.
struct SmoothModel {
  std::function<double(double)> f;               // f(u) for moderate u
  std::function<double(double)> scaled;          // 2^v f(2^v), safe for large v
  std::function<double(std::uint64_t)> block_error;  // |sum over block n - integral| bound
  std::uint64_t monotone_from = 0;               // f nonincreasing on [monotone_from, inf)
  std::uint64_t convex_from = UINT64_MAX;        // f convex and decreasing on [convex_from, inf)
  std::optional<LogPowerForm> log_power;
  std::vector<cplx> phase;
};

// Block-constant model: every entry of block n (indices 2^n-1 .. 2^{n+1}-2)
// equals x(n) g(2^n) phase[j % P].
struct BlockModel {
  std::function<cplx(std::uint64_t)> x;
  double x_sup = 0.0;
  WeightFamily weight;
  std::vector<cplx> phase;

  cplx value(std::uint64_t n) const { return x(n) * std::exp(weight.log_g_exp(double(n) * kLog2)); }
};

struct Envelope {
  WeightFamily weight;
  double constant = 1.0;        // |x_n| <= constant * g(n)
};

struct SpectralSequence {
  std::function<cplx(std::uint64_t)> gen;
  SequenceKind kind = SequenceKind::diagonal;
  std::optional<std::uint64_t> extent;   // values known for n < extent only
  bool zero_beyond_extent = false;       // finite rank: x_n = 0 for n >= extent
  std::optional<Envelope> envelope;
  std::optional<SmoothModel> smooth;
  std::optional<BlockModel> blocks;
  // sum over all n of |x_n|^p, when a closed form is known
  std::function<double(double)> power_total;
  std::string descriptor;

  cplx operator()(std::uint64_t n) const {
    if (extent && n >= *extent) {
      if (zero_beyond_extent) return 0.0;
      throw Error(ErrorCode::insufficient_prefix,
                  descriptor + ": index " + std::to_string(n) + " beyond enumerated prefix " + std::to_string(*extent));
    }
    return gen(n);
  }
  // number of indices that can be evaluated (max uint64 when unbounded)
  std::uint64_t available() const {
    if (!extent || zero_beyond_extent) return UINT64_MAX;
    return *extent;
  }
  bool finite_rank() const { return extent.has_value() && zero_beyond_extent; }
  bool has_analytic_tail() const { return smooth.has_value() || blocks.has_value() || finite_rank(); }
};

inline std::uint64_t block_first(std::uint64_t n) { return (std::uint64_t{1} << n) - 1; }
inline std::uint64_t block_of(std::uint64_t j) {
  std::uint64_t n = 0;
  while (((std::uint64_t{2} << n) - 1) <= j) ++n;
  return n;
}

// sup over residues r and lengths L of |sum_{i<L} (w[(r+i)%P] - mean)|, and the mean
inline std::pair<cplx, double> phase_mean_and_swing(const std::vector<cplx>& w) {
  if (w.empty()) return {1.0, 0.0};
  cplx mean = 0.0;
  for (auto v : w) mean += v;
  mean /= double(w.size());
  double swing = 0.0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc += w[(r + i) % w.size()] - mean;
      swing = std::max(swing, std::abs(acc));
    }
  }
  return {mean, swing};
}

// sum of w[j % P] over j in [a, b]
inline cplx phase_range_sum(const std::vector<cplx>& w, std::uint64_t a, std::uint64_t b) {
  if (w.empty()) return double(b - a + 1);
  const std::uint64_t P = w.size();
  const std::uint64_t len = b - a + 1;
  const std::uint64_t full = len / P;
  cplx total = 0.0;
  if (full > 0) {
    cplx per = 0.0;
    for (auto v : w) per += v;
    total += per * double(full);
  }
  for (std::uint64_t j = a + full * P; j <= b; ++j) total += w[j % P];
  return total;
}

namespace detail {

inline SmoothModel log_power_model(LogPowerForm lp) {
  SmoothModel m;
  m.f = lp;
  m.scaled = [lp](double v) {
    // 2^v f(2^v) = c * u/(u+b) * log^k(u+b)
    const double e = std::exp2(-v) * lp.b;
    const double logy = v * kLog2 + std::log1p(e);
    return lp.c / (1.0 + e) * std::pow(logy, lp.k);
  };
  m.block_error = [lp](std::uint64_t n) {
    // midpoint rule on 2^n cells: 2^n max|f''| / 24 with f'' bounded by its leading
    // terms; written as 2^{-2n} times O(1) factors so large n cannot overflow
    const double nn = double(n);
    const double rel = 1.0 + (lp.b - 1.5) * std::exp2(-nn);  // y / 2^n at the block start
    const double L = (nn + 1.0) * kLog2 + std::log1p(lp.b * std::exp2(-nn - 1.0));
    const int k = lp.k;
    double d2 = 2.0 * std::pow(L, k);
    if (k >= 1) d2 += 3.0 * k * std::pow(L, k - 1);
    if (k >= 2) d2 += double(k) * (k - 1) * std::pow(L, k - 2);
    return std::exp2(-2.0 * nn) * std::abs(lp.c) * d2 / (rel * rel * rel) / 24.0;
  };
  m.monotone_from = std::uint64_t(std::max(0.0, std::ceil(std::exp(double(lp.k)) - lp.b)));
  // f'' > 0 once log(u+b) exceeds the larger root of 2L^2 - 3kL + k(k-1)
  {
    const double k = lp.k;
    const double L0 = (3.0 * k + std::sqrt(k * k + 8.0 * k)) / 4.0;
    m.convex_from = std::max(m.monotone_from, std::uint64_t(std::max(0.0, std::ceil(std::exp(L0) - lp.b))));
  }
  m.log_power = lp;
  return m;
}

}  // namespace detail

inline SpectralSequence seq_zero() {
  SpectralSequence s;
  s.gen = [](std::uint64_t) { return cplx(0.0); };
  s.kind = SequenceKind::singular_value;
  s.extent = 0;
  s.zero_beyond_extent = true;
  s.power_total = [](double) { return 0.0; };
  s.descriptor = "zero";
  return s;
}

inline SpectralSequence seq_harmonic() {
  SpectralSequence s;
  s.gen = [](std::uint64_t n) { return cplx(1.0 / (double(n) + 1.0)); };
  s.kind = SequenceKind::singular_value;
  s.envelope = Envelope{weight_gk(0), 2.0};
  s.smooth = detail::log_power_model(LogPowerForm{1.0, 0, 1.0});
  s.power_total = [](double p) {
    if (p <= 1.0) return std::numeric_limits<double>::infinity();
    return riemann_zeta(p);
  };
  s.descriptor = "harmonic";
  return s;
}

// finite list of values, zero afterwards
inline SpectralSequence seq_values(std::vector<cplx> values, std::string desc) {
  SpectralSequence s;
  bool sv = true, ordered = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].imag() != 0.0 || values[i].real() < 0.0) sv = false;
    if (i > 0 && std::abs(values[i]) > std::abs(values[i - 1])) ordered = false;
  }
  s.kind = (sv && ordered) ? SequenceKind::singular_value : ordered ? SequenceKind::eigenvalue : SequenceKind::diagonal;
  auto p = std::make_shared<const std::vector<cplx>>(std::move(values));
  s.gen = [p](std::uint64_t n) { return n < p->size() ? (*p)[n] : cplx(0.0); };
  s.extent = p->size();
  s.zero_beyond_extent = true;
  s.power_total = [p](double q) {
    double t = 0.0;
    for (auto v : *p) t += std::pow(std::abs(v), q);
    return t;
  };
  s.descriptor = std::move(desc);
  return s;
}

// known prefix of an infinite sequence; values past the prefix are unavailable
inline SpectralSequence seq_prefix(std::vector<double> values, SequenceKind kind, std::string desc) {
  SpectralSequence s;
  auto p = std::make_shared<const std::vector<double>>(std::move(values));
  s.gen = [p](std::uint64_t n) { return cplx((*p)[n]); };
  s.extent = p->size();
  s.kind = kind;
  s.descriptor = std::move(desc);
  return s;
}

inline SpectralSequence seq_indicator(std::uint64_t i, double value = 1.0) {
  std::vector<cplx> v(i + 1, 0.0);
  v[i] = value;
  auto s = seq_values(std::move(v), "indicator:i=" + std::to_string(i));
  return s;
}

// CSV, one value per line (first column used), index implicit; a finite-rank model.
inline SpectralSequence seq_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::vector<cplx> vals;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto comma = line.find(',');
    std::string cell = line.substr(0, comma);
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    if (cell.empty() || cell[0] == '#') continue;
    try {
      std::size_t used = 0;
      double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      vals.emplace_back(v);
    } catch (const std::exception&) {
      if (vals.empty() && lineno == 1) continue;  // header
      throw Error(ErrorCode::parse_error, path + ":" + std::to_string(lineno) + ": not a number '" + cell + "'");
    }
  }
  return seq_values(std::move(vals), "file:" + path);
}

// Eventually decreasing f presented in nonincreasing order: the first `head`
// values are sorted and re-inserted at their rank; f(j) for j past the last
// insertion point is unchanged.
inline std::function<cplx(std::uint64_t)> sorted_head_generator(std::function<double(double)> f, std::uint64_t head,
                                                                std::uint64_t* last_insert) {
  std::vector<std::pair<double, std::uint64_t>> h;
  for (std::uint64_t i = 0; i < head; ++i) h.push_back({f(double(i)), i});
  std::stable_sort(h.begin(), h.end(), [](auto& a, auto& b) { return a.first > b.first; });
  // rank of head element = its head position + number of tail values strictly greater
  std::vector<std::uint64_t> rank(h.size());
  std::uint64_t maxrank = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    // tail f(head + m) is decreasing; find count of m with f > h_i by exponential + binary search
    std::uint64_t lo = 0, hi = 1;
    while (f(double(head + hi - 1)) > h[i].first) hi *= 2;
    // first m in [0, hi) with f(head+m) <= h_i
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (f(double(head + mid)) > h[i].first)
        lo = mid + 1;
      else
        hi = mid;
    }
    rank[i] = i + lo;
    maxrank = std::max(maxrank, rank[i]);
  }
  if (last_insert) *last_insert = maxrank;
  auto hv = std::make_shared<std::vector<double>>();
  for (auto& p : h) hv->push_back(p.first);
  auto rk = std::make_shared<const std::vector<std::uint64_t>>(rank);
  return [f, hv, rk, head](std::uint64_t r) -> cplx {
    auto it = std::lower_bound(rk->begin(), rk->end(), r);
    if (it != rk->end() && *it == r) return (*hv)[it - rk->begin()];
    const std::uint64_t before = std::uint64_t(it - rk->begin());
    return f(double(head + (r - before)));
  };
}

// diag(g) for a weight family, in nonincreasing order
inline SpectralSequence seq_weight_diagonal(const WeightFamily& w) {
  SpectralSequence s;
  const std::uint64_t head = std::uint64_t(std::ceil(w.shift_a)) + 1;
  std::uint64_t last = 0;
  s.gen = sorted_head_generator(w.g, head, &last);
  s.kind = SequenceKind::singular_value;
  s.envelope = Envelope{w, 1.0};
  if (w.log_power) {
    s.smooth = detail::log_power_model(*w.log_power);
  } else {
    SmoothModel m;
    m.f = w.g;
    m.scaled = [w](double v) { return std::exp(w.log_tg_exp(v * kLog2)); };
    m.block_error = [w](std::uint64_t n) {
      // these weights behave like L(u)/u with L slowly varying; |f''| <= 4 f(u)/u^2 past the knee
      if (n < 7) return std::numeric_limits<double>::infinity();
      const double nn = double(n);
      const double rel = 1.0 - 1.5 * std::exp2(-nn);
      // 2^n * 4 g(u)/u^2 / 24 with u = 2^n rel and u g(u) = exp(log_tg_exp(log u))
      const double lu = nn * kLog2 + std::log(rel);
      return 4.0 * std::exp(w.log_tg_exp(lu)) * std::exp2(-2.0 * nn) / (rel * rel * rel) / 24.0;
    };
    m.monotone_from = 0;
    s.smooth = m;
  }
  if (s.smooth) s.smooth->monotone_from = std::max<std::uint64_t>(s.smooth->monotone_from, last + 1);
  if (w.gk_index && *w.gk_index == 0) {
    // sum 1/(n+2)^p
    s.power_total = [](double p) {
      return p > 1.0 ? riemann_zeta(p) - 1.0 : std::numeric_limits<double>::infinity();
    };
  }
  s.descriptor = "diag(" + w.descriptor + ")";
  return s;
}

// the non-measurable witness (1 + amp cos(2 pi log2 log2(n+16)))/(n+1)
inline SpectralSequence seq_oscillating(double amp) {
  if (!(amp >= 0.0 && amp <= 1.0)) throw Error(ErrorCode::invalid_argument, "oscillating:amp must be in [0,1]");
  SpectralSequence s;
  auto f = [amp](double u) {
    return (1.0 + amp * std::cos(2.0 * std::numbers::pi * std::log2(std::log2(u + 16.0)))) / (u + 1.0);
  };
  s.gen = [f](std::uint64_t n) { return cplx(f(double(n))); };
  s.kind = amp == 0.0 ? SequenceKind::singular_value : SequenceKind::diagonal;
  s.envelope = Envelope{weight_gk(0), 2.0 * (1.0 + amp)};
  SmoothModel m;
  m.f = f;
  m.scaled = [amp](double v) {
    const double e16 = std::exp2(-v) * 16.0;
    const double l2 = v + std::log2(1.0 + e16);
    return (1.0 + amp * std::cos(2.0 * std::numbers::pi * std::log2(l2))) / (1.0 + std::exp2(-v));
  };
  m.block_error = [amp](std::uint64_t n) {
    const double nn = double(n);
    const double rel = 1.0 - 0.5 * std::exp2(-nn);  // (u+1)/2^n at the block start
    return std::exp2(-2.0 * nn) * (2.0 + 120.0 * amp) / (rel * rel * rel) / 24.0;
  };
  m.monotone_from = UINT64_MAX;  // not monotone; no phase is ever attached to it directly
  s.smooth = m;
  std::ostringstream d;
  d << "oscillating:amp=" << amp << ",scale=loglog";
  s.descriptor = d.str();
  return s;
}

// D_g x: value x_n g(2^n) repeated 2^n times
inline SpectralSequence pietsch_operator(const BoundedSequence& x, const WeightFamily& w) {
  SpectralSequence s;
  auto xg = x.gen;
  BlockModel bm;
  bm.x = xg;
  bm.x_sup = x.sup_norm;
  bm.weight = w;
  s.blocks = bm;
  s.gen = [bm](std::uint64_t j) { return bm.value(block_of(j)); };
  if (x.support) {
    const std::uint64_t supp = *x.support;
    s.extent = supp == 0 ? 0 : (std::uint64_t{2} << (supp - 1)) - 1;
    s.zero_beyond_extent = true;
  }
  // singular-value kind when x >= 0 and x_n g(2^n) nonincreasing (checked on 64 blocks,
  // g is decreasing past shift_a so the tail only needs x to be nonincreasing there)
  bool sv = x.real_nonnegative();
  if (sv) {
    const std::uint64_t nb = x.support ? std::min<std::uint64_t>(*x.support + 1, 64) : 64;
    double prev = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 0; n < nb && sv; ++n) {
      double v = bm.value(n).real();
      if (v > prev * (1.0 + 1e-15)) sv = false;
      prev = v;
    }
    if (sv && x.periodic() && x.period.size() > 1) {
      for (auto v : x.period)
        if (v != x.period.front()) sv = false;
    }
  }
  s.kind = sv ? SequenceKind::singular_value : SequenceKind::diagonal;
  if (x.periodic() && x.period.size() == 1 && x.period[0].imag() == 0.0 && x.period[0].real() >= 0.0) {
    const double c = x.period[0].real();
    s.envelope = Envelope{w, c * 2.0};
  }
  s.descriptor = "pietsch(" + x.descriptor + "," + w.descriptor + ")";
  return s;
}

// (v mu)_n; keeps the analytic models when v is periodic
inline SpectralSequence seq_weighted(const BoundedSequence& v, const SpectralSequence& mu) {
  SpectralSequence s;
  auto vg = v.gen;
  auto mg = mu.gen;
  s.gen = [vg, mg](std::uint64_t n) { return vg(n) * mg(n); };
  s.extent = mu.extent;
  s.zero_beyond_extent = mu.zero_beyond_extent;
  if (v.support) {
    const std::uint64_t e = mu.extent ? std::min(*mu.extent, *v.support) : *v.support;
    if (!mu.extent || mu.zero_beyond_extent || *v.support <= *mu.extent) {
      s.extent = e;
      s.zero_beyond_extent = true;
    }
  }
  bool const_modulus = v.periodic();
  if (const_modulus)
    for (auto x : v.period)
      if (std::abs(std::abs(x) - std::abs(v.period.front())) > 1e-15) const_modulus = false;
  bool real_nonneg = v.periodic() && v.real_nonnegative();
  if (mu.kind == SequenceKind::singular_value && const_modulus)
    s.kind = (real_nonneg && v.period.size() == 1) ? SequenceKind::singular_value : SequenceKind::eigenvalue;
  else if (mu.kind == SequenceKind::eigenvalue && const_modulus)
    s.kind = SequenceKind::eigenvalue;
  else
    s.kind = SequenceKind::diagonal;
  if (mu.envelope) s.envelope = Envelope{mu.envelope->weight, mu.envelope->constant * v.sup_norm};
  if (v.periodic()) {
    auto combine = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
      if (a.empty()) return b;
      if (b.empty()) return a;
      std::size_t P = std::lcm(a.size(), b.size());
      std::vector<cplx> out(P);
      for (std::size_t i = 0; i < P; ++i) out[i] = a[i % a.size()] * b[i % b.size()];
      return out;
    };
    if (mu.smooth) {
      SmoothModel m = *mu.smooth;
      m.phase = combine(m.phase, v.period);
      s.smooth = m;
    }
    if (mu.blocks) {
      BlockModel b = *mu.blocks;
      b.phase = combine(b.phase, v.period);
      b.x_sup *= v.sup_norm;
      s.blocks = b;
    }
    if (mu.power_total && const_modulus) {
      auto pt = mu.power_total;
      const double a = std::abs(v.period.front());
      s.power_total = [pt, a](double p) { return std::pow(a, p) * pt(p); };
    }
  }
  s.descriptor = v.descriptor + "*" + mu.descriptor;
  return s;
}

// c * mu
inline SpectralSequence seq_scaled(double c, const SpectralSequence& mu) {
  SpectralSequence s = mu;
  auto g = mu.gen;
  s.gen = [g, c](std::uint64_t n) { return c * g(n); };
  if (c < 0.0 && s.kind == SequenceKind::singular_value) s.kind = SequenceKind::eigenvalue;
  if (s.envelope) s.envelope->constant *= std::abs(c);
  if (s.smooth) {
    auto f = s.smooth->f;
    auto sc = s.smooth->scaled;
    auto be = s.smooth->block_error;
    s.smooth->f = [f, c](double u) { return c * f(u); };
    s.smooth->scaled = [sc, c](double v) { return c * sc(v); };
    s.smooth->block_error = [be, c](std::uint64_t n) { return std::abs(c) * be(n); };
    if (s.smooth->log_power) s.smooth->log_power->c *= c;
  }
  if (s.blocks) {
    auto xg = s.blocks->x;
    s.blocks->x = [xg, c](std::uint64_t n) { return c * xg(n); };
    s.blocks->x_sup *= std::abs(c);
  }
  if (mu.power_total) {
    auto pt = mu.power_total;
    s.power_total = [pt, c](double p) { return std::pow(std::abs(c), p) * pt(p); };
  }
  std::ostringstream d;
  d << c << "*" << mu.descriptor;
  s.descriptor = d.str();
  return s;
}

// Materialize the first n values (throws insufficient-prefix past the known prefix).
inline std::vector<cplx> materialize(const SpectralSequence& s, std::uint64_t n) {
  std::vector<cplx> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(s(i));
  return out;
}

}  // namespace dixlab
