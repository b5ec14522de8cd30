#include "ring/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ring/errors.hpp"

namespace ring {

int eigenvalues_below(const Tridiagonal& T, double x) {
  const int n = T.n();
  int count = 0;
  double q = 1.0;
  for (int i = 0; i < n; ++i) {
    const double coupling = i > 0 ? T.off[static_cast<size_t>(i - 1)] : 0.0;
    q = T.diag[static_cast<size_t>(i)] - x - (i > 0 ? coupling * coupling / q : 0.0);
    if (q == 0.0)
      q = std::numeric_limits<double>::min();
    if (q < 0.0)
      ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& T, int k) {
  const int n = T.n();
  if (n < 1)
    throw DomainError("lowest_eigenvalues: empty matrix");
  if (k < 1 || k > n)
    throw DomainError("lowest_eigenvalues: need 1 <= k <= n");
  double lo = T.diag[0], hi = T.diag[0];
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(T.off[static_cast<size_t>(i - 1)]) : 0.0;
    const double right = i + 1 < n ? std::abs(T.off[static_cast<size_t>(i)]) : 0.0;
    lo = std::min(lo, T.diag[static_cast<size_t>(i)] - left - right);
    hi = std::max(hi, T.diag[static_cast<size_t>(i)] + left + right);
  }
  std::vector<double> eigs(static_cast<size_t>(k));
  double floor = lo;
  for (int j = 0; j < k; ++j) {
    double a = floor, b = hi;
    while (b - a > 1e-15 * (std::abs(a) + std::abs(b)) + 1e-14) {
      const double mid = a + 0.5 * (b - a);
      if (eigenvalues_below(T, mid) >= j + 1)
        b = mid;
      else
        a = mid;
    }
    eigs[static_cast<size_t>(j)] = a + 0.5 * (b - a);
    floor = a; // the next eigenvalue cannot be below this one
  }
  return eigs;
}

std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
  const size_t n = diag.size();
  if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
    throw DomainError("solve_tridiagonal: inconsistent band sizes");
  // Row pivoting introduces one extra super-diagonal.
  std::vector<double> extra(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    double sub = lower[i];
    if (std::abs(sub) > std::abs(diag[i])) {
      std::swap(diag[i], sub);
      std::swap(upper[i], diag[i + 1]);
      if (i + 2 < n)
        std::swap(extra[i], upper[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (diag[i] == 0.0)
      diag[i] = std::numeric_limits<double>::min();
    const double m = sub / diag[i];
    diag[i + 1] -= m * upper[i];
    if (i + 2 < n)
      upper[i + 1] -= m * extra[i];
    rhs[i + 1] -= m * rhs[i];
  }
  if (diag[n - 1] == 0.0)
    diag[n - 1] = std::numeric_limits<double>::min();
  std::vector<double> x(n);
  for (size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    if (ii + 1 < n)
      s -= upper[ii] * x[ii + 1];
    if (ii + 2 < n)
      s -= extra[ii] * x[ii + 2];
    x[ii] = s / diag[ii];
  }
  return x;
}

std::vector<double> inverse_iteration(const Tridiagonal& T, double mu, int iters) {
  const int n = T.n();
  if (n < 1)
    throw DomainError("inverse_iteration: empty matrix");
  double scale = 0.0;
  for (double d : T.diag)
    scale = std::max(scale, std::abs(d));
  for (double e : T.off)
    scale = std::max(scale, std::abs(e));
  const double shift = mu + 1e-12 * std::max(1.0, scale);

  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] = 1.0 + 1e-3 * std::sin(1.0 + i);
  std::vector<double> shifted(T.diag);
  for (double& d : shifted)
    d -= shift;
  for (int it = 0; it < iters; ++it) {
    v = solve_tridiagonal(T.off, shifted, T.off, v);
    double norm = 0.0;
    for (double c : v)
      norm += c * c;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw NumericalError("inverse_iteration: breakdown");
    for (double& c : v)
      c /= norm;
  }
  size_t peak = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[peak]))
      peak = i;
  if (v[peak] < 0.0)
    for (double& c : v)
      c = -c;
  return v;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

} // namespace

GmresResult gmres(const LinearOp& apply, const std::vector<double>& rhs, double rel_tol,
                  int max_iter) {
  if (!(rel_tol > 0.0) || max_iter < 1)
    throw DomainError("gmres: rel_tol must be positive and max_iter at least 1");
  const size_t n = rhs.size();
  GmresResult out;
  out.x.assign(n, 0.0);

  const double beta = std::sqrt(dot(rhs, rhs));
  if (beta == 0.0) {
    out.converged = true;
    return out;
  }

  const int m = std::min<int>(max_iter, static_cast<int>(n));
  std::vector<std::vector<double>> basis;
  basis.reserve(m + 1);
  basis.push_back(rhs);
  for (double& c : basis[0])
    c /= beta;

  // Hessenberg columns after the Givens sweep, plus the rotation pairs.
  std::vector<std::vector<double>> hcols;
  std::vector<double> cs, sn;
  std::vector<double> g{beta};

  int k = 0;
  std::vector<double> w(n);
  for (; k < m; ++k) {
    apply(basis[k], w);
    std::vector<double> h(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      h[i] = dot(w, basis[i]);
      for (size_t idx = 0; idx < n; ++idx)
        w[idx] -= h[i] * basis[i][idx];
    }
    const double wn = std::sqrt(dot(w, w));
    h[k + 1] = wn;

    for (int i = 0; i < k; ++i) {
      double tmp = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = tmp;
    }
    double denom = std::hypot(h[k], h[k + 1]);
    double c = 1.0, s = 0.0;
    if (denom > 0.0) {
      c = h[k] / denom;
      s = h[k + 1] / denom;
    }
    cs.push_back(c);
    sn.push_back(s);
    h[k] = denom;
    h[k + 1] = 0.0;
    g.push_back(-s * g[k]);
    g[k] *= c;
    hcols.push_back(std::move(h));

    const double res = std::abs(g[k + 1]);
    if (res <= rel_tol * beta) {
      out.converged = true;
      break;
    }
    if (wn == 0.0)
      break; // the Krylov space is invariant; the solution lives in it already
    std::vector<double> v = w;
    for (double& c2 : v)
      c2 /= wn;
    basis.push_back(std::move(v));
  }

  // Back-substitute the triangular system for the Krylov coefficients.
  const int used = static_cast<int>(hcols.size());
  std::vector<double> y(used, 0.0);
  for (int i = used - 1; i >= 0; --i) {
    double s = g[i];
    for (int j = i + 1; j < used; ++j)
      s -= hcols[j][i] * y[j];
    double d = hcols[i][i];
    if (d == 0.0)
      d = std::numeric_limits<double>::min();
    y[i] = s / d;
  }
  for (int i = 0; i < used; ++i)
    for (size_t idx = 0; idx < n; ++idx)
      out.x[idx] += y[i] * basis[i][idx];

  out.iterations = used;
  out.relative_residual = std::abs(g[used]) / beta;
  if (out.relative_residual <= rel_tol)
    out.converged = true;
  return out;
}

} // namespace ring
