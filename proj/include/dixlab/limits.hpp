#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace dixlab {

enum class Verdict { converged, diverged_range, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverged_range: return "diverged-range";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

// Range surrogate for an extended limit. window_inf/window_sup bracket the
// limit after removing the fitted drift; raw_inf/raw_sup are the plain
// min/max of the trailing checkpoint values.
struct LimitEstimate {
  std::vector<std::pair<double, double>> checkpoints;
  double window_inf = 0.0;
  double window_sup = 0.0;
  double raw_inf = 0.0;
  double raw_sup = 0.0;
  std::optional<double> extrapolated;
  Verdict verdict = Verdict::inconclusive;
  double tolerance = 0.0;      // absolute width threshold actually applied
  double rel_tolerance = 0.0;  // requested, relative to max(1, |limit|)
  std::size_t trailing = 0;    // number of checkpoints in the window
  std::string model;

  double width() const { return window_sup - window_inf; }
  double value() const { return extrapolated ? *extrapolated : 0.5 * (window_inf + window_sup); }
};

using DriftBasis = std::vector<std::function<double(double)>>;

namespace detail {

// Least squares by Householder QR; returns coefficients. rows >= cols.
inline std::vector<double> least_squares(std::vector<std::vector<double>> A, std::vector<double> y) {
  const std::size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += A[i][k] * A[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = A[k][k] > 0 ? -norm : norm;
    std::vector<double> v(m, 0.0);
    for (std::size_t i = k; i < m; ++i) v[i] = A[i][k];
    v[k] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k; i < m; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = k; i < m; ++i) d += v[i] * A[i][j];
      d = 2.0 * d / vv;
      for (std::size_t i = k; i < m; ++i) A[i][j] -= d * v[i];
    }
    double d = 0.0;
    for (std::size_t i = k; i < m; ++i) d += v[i] * y[i];
    d = 2.0 * d / vv;
    for (std::size_t i = k; i < m; ++i) y[i] -= d * v[i];
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = y[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * x[j];
    x[k] = A[k][k] != 0.0 ? s / A[k][k] : 0.0;
  }
  return x;
}

inline bool monotone(const std::vector<double>& v) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) down = false;
    if (v[i] < v[i - 1]) up = false;
  }
  return up || down;
}

}  // namespace detail

// Fit value ~ c + sum_i b_i phi_i(param) on the trailing half of the
// checkpoints. The basis is shortened when there are too few points.
inline LimitEstimate estimate_limit(std::vector<std::pair<double, double>> pts, const DriftBasis& drift, double rel_tol,
                                    std::string model = {}) {
  LimitEstimate e;
  e.checkpoints = std::move(pts);
  e.rel_tolerance = rel_tol;
  e.model = std::move(model);
  const std::size_t n = e.checkpoints.size();
  if (n == 0) {
    e.tolerance = rel_tol;
    return e;
  }
  const std::size_t take = std::max<std::size_t>(1, (n + 1) / 2);
  const std::size_t from = n - take;
  e.trailing = take;
  std::vector<double> y;
  for (std::size_t i = from; i < n; ++i) y.push_back(e.checkpoints[i].second);
  auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  e.raw_inf = *lo;
  e.raw_sup = *hi;

  // keep at least two residual degrees of freedom
  std::size_t nb = drift.size();
  while (nb > 0 && take < nb + 3) --nb;
  std::vector<std::vector<double>> A;
  for (std::size_t i = from; i < n; ++i) {
    std::vector<double> row{1.0};
    for (std::size_t j = 0; j < nb; ++j) row.push_back(drift[j](e.checkpoints[i].first));
    A.push_back(std::move(row));
  }
  double c = y.back();
  std::vector<double> resid(y.size(), 0.0);
  if (take >= 2) {
    auto coef = detail::least_squares(A, y);
    c = coef[0];
    for (std::size_t i = 0; i < y.size(); ++i) {
      double fit = 0.0;
      for (std::size_t j = 0; j < coef.size(); ++j) fit += coef[j] * A[i][j];
      resid[i] = y[i] - fit;
    }
  }
  if (!std::isfinite(c)) {
    e.verdict = Verdict::inconclusive;
    e.window_inf = e.raw_inf;
    e.window_sup = e.raw_sup;
    e.tolerance = rel_tol;
    return e;
  }
  e.extrapolated = c;
  auto [rlo, rhi] = std::minmax_element(resid.begin(), resid.end());
  e.window_inf = c + *rlo;
  e.window_sup = c + *rhi;
  e.tolerance = rel_tol * std::max(1.0, std::abs(c));
  if (take < 3)
    e.verdict = Verdict::inconclusive;
  else if (e.width() <= e.tolerance)
    e.verdict = Verdict::converged;
  else if (!detail::monotone(y))
    e.verdict = Verdict::diverged_range;
  else
    e.verdict = Verdict::inconclusive;
  return e;
}

// Componentwise estimate for complex-valued checkpoint sequences.
struct ComplexLimit {
  LimitEstimate re;
  LimitEstimate im;

  Verdict verdict() const {
    if (re.verdict == Verdict::converged && im.verdict == Verdict::converged) return Verdict::converged;
    if (re.verdict == Verdict::diverged_range || im.verdict == Verdict::diverged_range) return Verdict::diverged_range;
    return Verdict::inconclusive;
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
  bool is_real() const {
    for (auto& p : im.checkpoints)
      if (p.second != 0.0) return false;
    return true;
  }
};

inline ComplexLimit estimate_limit(const std::vector<std::pair<double, std::complex<double>>>& pts,
                                   const DriftBasis& drift, double rel_tol, const std::string& model = {}) {
  std::vector<std::pair<double, double>> re, im;
  for (auto& [p, v] : pts) {
    re.push_back({p, v.real()});
    im.push_back({p, v.imag()});
  }
  return {estimate_limit(std::move(re), drift, rel_tol, model), estimate_limit(std::move(im), drift, rel_tol, model)};
}

}  // namespace dixlab
