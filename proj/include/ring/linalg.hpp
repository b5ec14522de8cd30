#pragma once

#include <functional>
#include <vector>

namespace ring {

// Symmetric tridiagonal matrix: diag has n entries, off the n-1 couplings.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int n() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below x (Sturm sequence via the LDL^T
// pivots, zero pivots nudged to the smallest normal magnitude).
int eigenvalues_below(const Tridiagonal& T, double x);

// The k smallest eigenvalues, each located by bisection inside the
// Gershgorin interval. Guaranteed ordered.
std::vector<double> lowest_eigenvalues(const Tridiagonal& T, int k);

// Unit eigenvector for an eigenvalue estimate mu, by inverse iteration with
// a row-pivoted tridiagonal solve. Sign convention: positive at the entry of
// largest magnitude.
std::vector<double> inverse_iteration(const Tridiagonal& T, double mu, int iters = 4);

// General tridiagonal solve (lower/upper are the n-1 sub- and
// super-diagonals) with partial pivoting.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs);

// Matrix-free linear operator: writes A*x into the second argument, which is
// pre-sized to match x.
using LinearOp = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct GmresResult {
  std::vector<double> x;
  double relative_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Unrestarted GMRES with modified Gram-Schmidt and Givens rotations, starting
// from x = 0. Stops when the residual drops below rel_tol * ||rhs|| or after
// max_iter Krylov vectors. A zero rhs returns x = 0 immediately.
GmresResult gmres(const LinearOp& apply, const std::vector<double>& rhs, double rel_tol,
                  int max_iter);

} // namespace ring
