#include "kellerpath/linalg.hpp"

#include <cmath>
#include <limits>

#include "kellerpath/errors.hpp"

namespace ks {

bool solve_tridiag(const Tridiag& A, std::vector<double>& rhs) {
  const std::size_t n = A.size();
  if (n == 0 || rhs.size() != n) return false;
  // working copies with the extra superdiagonal created by row swaps
  std::vector<double> dl = A.lower, d = A.diag, du = A.upper, du2(n > 2 ? n - 2 : 0, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) return false;
      const double mult = dl[i] / d[i];
      d[i + 1] -= mult * du[i];
      rhs[i + 1] -= mult * rhs[i];
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      const double mult = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - mult * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -mult * du2[i];
      }
      du[i] = tmp;
      const double r = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = r - mult * rhs[i];
    }
  }
  if (d[n - 1] == 0.0) return false;
  rhs[n - 1] /= d[n - 1];
  if (n >= 2) {
    const std::size_t i = n - 2;
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1]) / d[i];
  }
  for (std::size_t k = n; k >= 3; --k) {
    const std::size_t i = k - 3;
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
  }
  return true;
}

void tridiag_apply(const Tridiag& A, const std::vector<double>& x,
                   std::vector<double>& y) {
  const std::size_t n = A.size();
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = A.diag[i] * x[i];
    if (i > 0) s += A.lower[i - 1] * x[i - 1];
    if (i + 1 < n) s += A.upper[i] * x[i + 1];
    y[i] = s;
  }
}

int sturm_count_below(const SymTriPencil& P, double sigma0) {
  const std::size_t n = P.size();
  int count = 0;
  double d = P.sdiag[0] - sigma0 * P.m[0];
  if (d == 0.0) d = -1e-300;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double off = P.soff[i - 1];
    d = (P.sdiag[i] - sigma0 * P.m[i]) - off * off / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0) ++count;
  }
  return count;
}

double inverse_iteration(const SymTriPencil& P, double shift,
                         std::vector<double>* vec, int max_iter, double tol) {
  const std::size_t n = P.size();
  Tridiag A;
  A.diag.resize(n);
  A.lower.assign(n - 1, 0.0);
  A.upper.assign(n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) A.diag[i] = P.sdiag[i] - shift * P.m[i];
  for (std::size_t i = 0; i + 1 < n; ++i) A.lower[i] = A.upper[i] = P.soff[i];

  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 1.0 + 0.25 * std::cos(3.0 * static_cast<double>(i) / static_cast<double>(n));
  auto m_norm = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += P.m[i] * v[i] * v[i];
    return std::sqrt(s);
  };
  double nx = m_norm(x);
  for (std::size_t i = 0; i < n; ++i) x[i] /= nx;

  double sigma = shift, sigma_prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) y[i] = P.m[i] * x[i];
    if (!solve_tridiag(A, y)) {
      // shift sits exactly on an eigenvalue
      for (std::size_t i = 0; i < n; ++i) A.diag[i] += 1e-12 * P.m[i];
      if (!solve_tridiag(A, y))
        throw SolverError(errc::eig_solver_failure, "singular shifted system");
    }
    const double ny = m_norm(y);
    if (!(ny > 0.0) || !std::isfinite(ny))
      throw SolverError(errc::eig_solver_failure, "inverse iteration diverged");
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    // Rayleigh quotient x^T S x / x^T M x (x is M-normalized)
    double sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = P.sdiag[i] * x[i];
      if (i > 0) s += P.soff[i - 1] * x[i - 1];
      if (i + 1 < n) s += P.soff[i] * x[i + 1];
      sx += x[i] * s;
    }
    sigma = sx;
    if (std::abs(sigma - sigma_prev) <= tol * (1.0 + std::abs(sigma))) break;
    sigma_prev = sigma;
  }
  if (vec) *vec = x;
  return sigma;
}

bool solve_dense(std::vector<double>& A, std::size_t n, std::vector<double>& b) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (A[piv * n + col] == 0.0) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / A[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= A[ri * n + c] * b[c];
    b[ri] = s / A[ri * n + ri];
  }
  return true;
}

double cond_estimate_1(std::vector<double> A, std::size_t n) {
  auto norm1 = [n](const std::vector<double>& M) {
    double worst = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::abs(M[r * n + c]);
      worst = std::max(worst, s);
    }
    return worst;
  };
  const double na = norm1(A);
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> Acopy = A, e(n, 0.0);
    e[c] = 1.0;
    if (!solve_dense(Acopy, n, e)) return std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) inv[r * n + c] = e[r];
  }
  return na * norm1(inv);
}

}  // namespace ks
