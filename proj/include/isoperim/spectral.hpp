#pragma once

// Dense symmetric eigenvalues by cyclic Jacobi rotations, and the spectrum
// of the normalized adjacency operator T/d.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "isoperim/error.hpp"
#include "isoperim/graph.hpp"

namespace isoperim {

/// Row-major dense symmetric matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct JacobiOptions {
  double tol = 1e-11;
  int max_sweeps = 100;
  /// Called after each sweep with the current diagonal sum.
  std::function<void(double)> on_sweep;
};

/// Ascending eigenvalues. Sweeps the upper triangle row by row and stops once
/// every off-diagonal magnitude is below `tol`.
inline std::vector<double> symmetric_eigenvalues(DenseMatrix m, const JacobiOptions& opt = {}) {
  const std::size_t n = m.n;
  if (m.a.size() != n * n) fail(Errc::invalid_descriptor, "matrix has the wrong size");
  if (!(opt.tol > 0)) fail(Errc::invalid_descriptor, "tolerance must be positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12) fail(Errc::not_symmetric, "matrix is not symmetric");

  auto max_off = [&] {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
  };

  int sweep = 0;
  while (max_off() >= opt.tol) {
    if (sweep++ >= opt.max_sweeps) fail(Errc::no_convergence, "Jacobi sweep cap reached");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = m(k, p), akq = m(k, q);
          m(k, p) = c * akp - s * akq;
          m(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = m(p, k), aqk = m(q, k);
          m(p, k) = c * apk - s * aqk;
          m(q, k) = s * apk + c * aqk;
        }
        m(p, q) = m(q, p) = 0.0;
      }
    if (opt.on_sweep) {
      double tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
      opt.on_sweep(tr);
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline DenseMatrix normalized_adjacency(const RegularMultigraph& gr) {
  DenseMatrix m{gr.n(), std::vector<double>(gr.n() * gr.n())};
  const double d = gr.d();
  for (std::size_t u = 0; u < gr.n(); ++u)
    for (std::size_t v = 0; v < gr.n(); ++v) m(u, v) = gr.adj(u, v) / d;
  return m;
}

struct SpectrumReport {
  std::vector<double> eigenvalues;  // descending
  double mu2 = 0;
  double mun = 0;
  double upper_gap = 0;  // 1 - mu2
  double lower_gap = 0;  // 1 + mu_n
  double residual = 0;
};

namespace detail {

/// Solves (m - shift I) x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> shifted_solve(const DenseMatrix& m, double shift, std::vector<double> b) {
  const std::size_t n = m.n;
  DenseMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= shift;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(piv, k));
      std::swap(b[col], b[piv]);
    }
    double p = a(col, col);
    if (std::abs(p) < 1e-300) p = a(col, col) = 1e-300;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / p;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

/// max |(M x - lambda x)_i| for the inverse-iteration eigenvector of lambda,
/// normalized to unit 2-norm.
inline double inverse_iteration_residual(const DenseMatrix& m, double lambda) {
  const std::size_t n = m.n;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(i));
  const double shift = lambda + 1e-10;
  for (int it = 0; it < 4; ++it) {
    x = shifted_solve(m, shift, x);
    double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (!(norm > 0) || !std::isfinite(norm)) return std::numeric_limits<double>::infinity();
    for (auto& v : x) v /= norm;
  }
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) s += m(i, k) * x[k];
    worst = std::max(worst, std::abs(s - lambda * x[i]));
  }
  return worst;
}

}  // namespace detail

inline SpectrumReport normalized_spectrum(const RegularMultigraph& gr, const JacobiOptions& opt = {}) {
  const DenseMatrix m = normalized_adjacency(gr);
  auto asc = symmetric_eigenvalues(m, opt);
  SpectrumReport r;
  r.eigenvalues.assign(asc.rbegin(), asc.rend());
  r.mu2 = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : r.eigenvalues[0];
  r.mun = r.eigenvalues.back();
  r.upper_gap = 1.0 - r.mu2;
  r.lower_gap = 1.0 + r.mun;
  r.residual = std::max(detail::inverse_iteration_residual(m, r.eigenvalues.front()),
                        detail::inverse_iteration_residual(m, r.eigenvalues.back()));

  double trace = 0;
  for (std::size_t v = 0; v < gr.n(); ++v) trace += gr.adj(v, v);
  trace /= gr.d();
  const double sum = std::accumulate(asc.begin(), asc.end(), 0.0);
  if (std::abs(r.eigenvalues.front() - 1.0) > 1e-9 || r.eigenvalues.front() > 1 + 1e-9 || r.mun < -1 - 1e-9 ||
      std::abs(sum - trace) > 1e-8)
    fail(Errc::internal_error, "normalized spectrum violates its invariants");
  return r;
}

}  // namespace isoperim
