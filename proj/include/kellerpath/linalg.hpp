#pragma once

#include <cstddef>
#include <vector>

namespace ks {

/// General tridiagonal matrix: lower[i] = A(i+1,i), diag[i] = A(i,i),
/// upper[i] = A(i,i+1).
struct Tridiag {
  std::vector<double> lower, diag, upper;
  std::size_t size() const { return diag.size(); }
};

/// LU solve with partial pivoting (gtsv-style).  Returns false when a pivot
/// vanishes.  rhs is overwritten with the solution.
bool solve_tridiag(const Tridiag& A, std::vector<double>& rhs);

/// y = A x for tridiagonal A.
void tridiag_apply(const Tridiag& A, const std::vector<double>& x,
                   std::vector<double>& y);

/// Symmetric tridiagonal pencil (S, M) with M diagonal positive: S has
/// diagonal sdiag and off-diagonal soff.
struct SymTriPencil {
  std::vector<double> sdiag, soff, m;
  std::size_t size() const { return sdiag.size(); }
};

/// Number of eigenvalues of S x = sigma M x strictly below `sigma0`
/// (Sturm count via the LDL^T pivots of S - sigma0 M).
int sturm_count_below(const SymTriPencil& P, double sigma0);

/// Smallest-magnitude eigenvalue near `shift` by inverse iteration on
/// (S - shift M, M).  Returns the Rayleigh quotient; fills *vec when given.
/// Throws SolverError(eig_solver_failure) when the iteration stalls.
double inverse_iteration(const SymTriPencil& P, double shift,
                         std::vector<double>* vec = nullptr, int max_iter = 200,
                         double tol = 1e-12);

/// Dense Gaussian elimination with partial pivoting for small systems.
/// A is row-major n x n, overwritten.  Returns false on singularity.
bool solve_dense(std::vector<double>& A, std::size_t n, std::vector<double>& b);

/// 1-norm condition estimate of a small dense matrix (via explicit inverse).
double cond_estimate_1(std::vector<double> A, std::size_t n);

}  // namespace ks
