#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace dixlab {

// Neumaier's variant of Kahan summation. Works for double and std::complex<double>
// (real and imaginary parts are compensated independently).
template <class T>
class NeumaierSum {
 public:
  NeumaierSum() = default;
  explicit NeumaierSum(T init) : sum_(init) {}

  void add(T x) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      double sr = sum_.real(), si = sum_.imag();
      double cr = comp_.real(), ci = comp_.imag();
      step(sr, cr, x.real());
      step(si, ci, x.imag());
      sum_ = {sr, si};
      comp_ = {cr, ci};
    } else {
      step(sum_, comp_, x);
    }
  }
  NeumaierSum& operator+=(T x) {
    add(x);
    return *this;
  }
  void merge(const NeumaierSum& o) {
    add(o.sum_);
    add(o.comp_);
  }
  T value() const { return sum_ + comp_; }

 private:
  static void step(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  T sum_{};
  T comp_{};
};

inline constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;

// Sum f(i) for i in [first, last). Each chunk of 2^16 consecutive indices is
// summed on its own and the chunk results are merged in index order, so the
// result does not depend on whether chunks ran in parallel.
template <class T, class F>
T chunked_sum(std::uint64_t first, std::uint64_t last, F&& f, bool parallel = false) {
  if (last <= first) return T{};
  const std::uint64_t nchunks = (last - first + kChunk - 1) / kChunk;
  auto run = [&](std::uint64_t c) {
    NeumaierSum<T> s;
    const std::uint64_t lo = first + c * kChunk;
    const std::uint64_t hi = std::min(last, lo + kChunk);
    for (std::uint64_t i = lo; i < hi; ++i) s.add(f(i));
    return s;
  };
  NeumaierSum<T> total;
  if (!parallel || nchunks < 4) {
    for (std::uint64_t c = 0; c < nchunks; ++c) total.merge(run(c));
    return total.value();
  }
  std::vector<NeumaierSum<T>> parts(nchunks);
  const unsigned nthreads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < nthreads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::uint64_t c = w; c < nchunks; c += nthreads) parts[c] = run(c);
    }));
  }
  for (auto& j : jobs) j.get();
  for (const auto& p : parts) total.merge(p);
  return total.value();
}

// Prefix sums at the requested (sorted, exclusive) end indices, one pass.
// ends[i] = n means the sum of f(0..n-1).
template <class T, class F>
std::vector<T> prefix_sums_at(const std::vector<std::uint64_t>& ends, F&& f, bool parallel = false) {
  std::vector<T> out;
  out.reserve(ends.size());
  NeumaierSum<T> acc;
  std::uint64_t pos = 0;
  for (std::uint64_t e : ends) {
    if (e > pos) {
      NeumaierSum<T> seg(chunked_sum<T>(pos, e, f, parallel));
      acc.merge(seg);
      pos = e;
    }
    out.push_back(acc.value());
  }
  return out;
}

}  // namespace dixlab
