#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "special.hpp"
#include "spectral_core.hpp"

namespace dixlab {

inline constexpr std::size_t kMaxOrder = 64;

// square complex matrix, row-major
struct DenseMatrix {
  std::size_t order = 0;
  std::vector<cplx> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : order(n), a(n * n, 0.0) {
    if (n < 1 || n > kMaxOrder) throw Error(ErrorCode::invalid_argument, "matrix order must be in 1..64");
  }
  DenseMatrix(std::size_t n, std::vector<cplx> entries) : order(n), a(std::move(entries)) {
    if (n < 1 || n > kMaxOrder) throw Error(ErrorCode::invalid_argument, "matrix order must be in 1..64");
    if (a.size() != n * n) throw Error(ErrorCode::invalid_argument, "entry count does not match the order");
    for (auto v : a)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorCode::invalid_argument, "matrix entries must be finite");
  }

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * order + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a[i * order + j]; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static DenseMatrix diagonal(const std::vector<cplx>& d) {
    DenseMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  double frobenius() const {
    double s = 0.0;
    for (auto v : a) s += std::norm(v);
    return std::sqrt(s);
  }
  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < order; ++i) t += (*this)(i, i);
    return t;
  }
};

inline DenseMatrix operator*(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.order != B.order) throw Error(ErrorCode::invalid_argument, "order mismatch");
  const std::size_t n = A.order;
  DenseMatrix C(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = A(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

inline DenseMatrix adjoint(const DenseMatrix& A) {
  DenseMatrix B(A.order);
  for (std::size_t i = 0; i < A.order; ++i)
    for (std::size_t j = 0; j < A.order; ++j) B(j, i) = std::conj(A(i, j));
  return B;
}

// Cyclic Jacobi on a real symmetric matrix; eigenvalues in descending order.
inline std::vector<double> symmetric_eigenvalues(const DenseMatrix& A) {
  const std::size_t n = A.order;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (A(i, j).imag() != 0.0) throw Error(ErrorCode::non_symmetric, "symmetric_eigenvalues needs a real matrix");
      if (std::abs(A(i, j).real() - A(j, i).real()) > 1e-12)
        throw Error(ErrorCode::non_symmetric, "matrix is not symmetric within 1e-12");
      scale = std::max(scale, std::abs(A(i, j).real()));
    }
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = 0.5 * (A(i, j).real() + A(j, i).real());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
  double norm = 0.0;
  for (double v : m) norm += v * v;
  norm = std::sqrt(norm);
  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < 100 && off() > 1e-13 * norm; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// One-sided (Hestenes) Jacobi: rotate column pairs of A until mutually
// orthogonal; the column norms are then the singular values.
inline std::vector<double> singular_values(const DenseMatrix& A) {
  const std::size_t n = A.order;
  std::vector<std::vector<cplx>> col(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = A(i, j);
  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx ph = gamma / g;  // e^{i phi}; column q is turned so the inner product is real
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const cplx ap = col[p][i];
          const cplx bq = col[q][i] * std::conj(ph);
          col[p][i] = c * ap - s * bq;
          col[q][i] = s * ap + c * bq;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (auto v : col[j]) s += std::norm(v);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

// SplitMix64 (Steele, Lea, Flood): state += 0x9e3779b97f4a7c15, then two xor-shift-multiply rounds
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  // uniform in the closed unit disc
  cplx disc() {
    const double r = std::sqrt(uniform());
    const double th = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, th);
  }
};

// Haar-ish random unitary: Gram-Schmidt on a random complex matrix
inline DenseMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<cplx>> q(n, std::vector<cplx>(n));
  for (auto& c : q)
    for (auto& v : c) v = rng.disc();
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(q[k][i]) * q[j][i];
        for (std::size_t i = 0; i < n; ++i) q[j][i] -= d * q[k][i];
      }
    double nn = 0.0;
    for (auto v : q[j]) nn += std::norm(v);
    nn = std::sqrt(nn);
    for (auto& v : q[j]) v /= nn;
  }
  DenseMatrix U(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) U(i, j) = q[j][i];
  return U;
}

// real orthogonal matrix from the same construction
inline DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix G(n);
  for (auto& v : G.a) v = 2.0 * rng.uniform() - 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += G(i, k).real() * G(i, j).real();
        for (std::size_t i = 0; i < n; ++i) G(i, j) -= d * G(i, k);
      }
    double nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) nn += std::norm(G(i, j));
    nn = std::sqrt(nn);
    for (std::size_t i = 0; i < n; ++i) G(i, j) /= nn;
  }
  return G;
}

struct WeylInstance {
  std::uint64_t seed = 0;
  DenseMatrix matrix;
  std::vector<double> eigen_moduli;  // sorted |diagonal|, descending
  std::vector<double> singular;      // descending
};

// Upper-triangular matrix with entries uniform in the unit disc; the eigenvalues
// are its diagonal.
inline WeylInstance triangular_weyl_instance(std::uint64_t seed, std::size_t order = 8, bool zero_upper = false) {
  SplitMix64 rng(seed);
  WeylInstance w;
  w.seed = seed;
  w.matrix = DenseMatrix(order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i; j < order; ++j) {
      const cplx v = rng.disc();
      if (i == j || !zero_upper) w.matrix(i, j) = v;
    }
  for (std::size_t i = 0; i < order; ++i) w.eigen_moduli.push_back(std::abs(w.matrix(i, i)));
  std::sort(w.eigen_moduli.begin(), w.eigen_moduli.end(), std::greater<>());
  w.singular = singular_values(w.matrix);
  return w;
}

inline bool weyl_holds(const WeylInstance& w, double slack = 1e-9) {
  return log_submajorize_check(w.eigen_moduli, w.singular, w.eigen_moduli.size(), slack);
}

struct WeylFuzzReport {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<std::uint64_t> violating_seeds;
  std::vector<std::size_t> orders;
};

// `count` instances per order, seeds base_seed + order * 1000003 + i
inline WeylFuzzReport weyl_fuzz(std::size_t count, const std::vector<std::size_t>& orders = {4, 8, 16, 32},
                                std::uint64_t base_seed = 0x5eed, double slack = 1e-9) {
  WeylFuzzReport r;
  r.orders = orders;
  for (auto n : orders)
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t seed = base_seed + n * 1000003ULL + i;
      auto w = triangular_weyl_instance(seed, n);
      ++r.instances;
      if (!weyl_holds(w, slack)) {
        ++r.violations;
        r.violating_seeds.push_back(seed);
      }
    }
  return r;
}

}  // namespace dixlab
