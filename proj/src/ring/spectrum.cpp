#include "ring/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ring/errors.hpp"

namespace ring {

CatenoidFamily::CatenoidFamily(int p_, double t_) : p(p_), t(t_) {
  if (p < 1)
    throw DomainError("CatenoidFamily: covering number must be >= 1");
  if (!(t > 0.0))
    throw DomainError("CatenoidFamily: half-height must be positive");
}

std::array<double, 3> CatenoidFamily::position(double r, double theta) const {
  const double ch = std::cosh(t * p * r);
  return {ch * std::cos(p * theta), ch * std::sin(p * theta), t * p * r};
}

std::array<double, 3> CatenoidFamily::normal(double r, double theta) const {
  const double ch = std::cosh(t * p * r);
  return {-std::cos(p * theta) / ch, -std::sin(p * theta) / ch, std::tanh(t * p * r)};
}

FundamentalForms fundamental_forms(int p, double t, double r) {
  if (!(t > 0.0))
    throw DomainError("fundamental_forms: half-height must be positive");
  const double ch = std::cosh(t * p * r);
  const double p2 = double(p) * p;
  FundamentalForms ff;
  ff.E = t * t * p2 * ch * ch;
  ff.F = 0.0;
  ff.G = p2 * ch * ch;
  ff.e = t * t * p2;
  ff.f = 0.0;
  ff.g = -p2;
  ff.K = -1.0 / (ch * ch * ch * ch);
  return ff;
}

namespace {

// Interior-node discretization of -w'' - 2p^2 sech^2(pr) w on [-t, t].
Tridiagonal radial_operator(int p, double t, int n_nodes) {
  const int n = n_nodes - 2;
  const double h = 2.0 * t / (n_nodes - 1);
  Tridiagonal T;
  T.diag.resize(static_cast<size_t>(n));
  T.off.assign(static_cast<size_t>(n - 1), -1.0 / (h * h));
  for (int i = 0; i < n; ++i) {
    const double r = -t + (i + 1) * h;
    const double ch = std::cosh(p * r);
    T.diag[static_cast<size_t>(i)] = 2.0 / (h * h) - 2.0 * p * p / (ch * ch);
  }
  return T;
}

std::vector<double> radial_eigenvalues(int p, double t, int k, int n_nodes) {
  return lowest_eigenvalues(radial_operator(p, t, n_nodes), k);
}

double mu1_extrapolated(int p, double t, int n_grid) {
  const double coarse = radial_eigenvalues(p, t, 1, n_grid)[0];
  const double fine = radial_eigenvalues(p, t, 1, 2 * (n_grid - 1) + 1)[0];
  return (4.0 * fine - coarse) / 3.0;
}

void check_spectrum_inputs(int p, double t, int k_eigs, int n_grid) {
  if (p < 1)
    throw DomainError("radial_spectrum: covering number must be >= 1");
  if (!(t > 0.0))
    throw DomainError("radial_spectrum: half-height must be positive");
  if (n_grid < 201 || n_grid % 2 == 0)
    throw DomainError("radial_spectrum: grid must be odd and >= 201");
  if (k_eigs < 1 || k_eigs > n_grid - 2)
    throw DomainError("radial_spectrum: eigenvalue count out of range");
}

} // namespace

SpectrumResult radial_spectrum(int p, double t, int k_eigs, int n_grid) {
  check_spectrum_inputs(p, t, k_eigs, n_grid);
  const Tridiagonal T = radial_operator(p, t, n_grid);
  const auto coarse = lowest_eigenvalues(T, k_eigs);
  const auto fine = radial_eigenvalues(p, t, k_eigs, 2 * (n_grid - 1) + 1);

  SpectrumResult res;
  res.p = p;
  res.t = t;
  res.n_grid = n_grid;
  res.refinement_estimate = 0.0;
  res.mus.resize(static_cast<size_t>(k_eigs));
  for (int j = 0; j < k_eigs; ++j) {
    const size_t sj = static_cast<size_t>(j);
    res.mus[sj] = (4.0 * fine[sj] - coarse[sj]) / 3.0;
    res.refinement_estimate =
        std::max(res.refinement_estimate, std::abs(fine[sj] - coarse[sj]) / 3.0);
  }
  for (int j = 1; j < k_eigs; ++j)
    if (res.mus[static_cast<size_t>(j)] <= res.mus[static_cast<size_t>(j - 1)])
      throw NumericalError("radial_spectrum: eigenvalues not separated at grid " +
                           std::to_string(n_grid));

  for (int j = 0; j < k_eigs; ++j) {
    const auto interior = inverse_iteration(T, coarse[static_cast<size_t>(j)]);
    std::vector<double> w(static_cast<size_t>(n_grid), 0.0);
    std::copy(interior.begin(), interior.end(), w.begin() + 1);
    res.eigenvectors.push_back(std::move(w));
  }
  return res;
}

std::vector<SpectralLine> full_spectrum(int p, double t, int n_max, int k_eigs,
                                        int n_grid) {
  if (n_max < 0)
    throw DomainError("full_spectrum: angular cutoff must be >= 0");
  const SpectrumResult rad = radial_spectrum(p, t, k_eigs, n_grid);
  std::vector<SpectralLine> lines;
  lines.reserve(static_cast<size_t>(k_eigs) * (n_max + 1));
  for (int n = 0; n <= n_max; ++n)
    for (int j = 0; j < k_eigs; ++j)
      lines.push_back({rad.mus[static_cast<size_t>(j)] + double(n) * n, j + 1, n});
  std::stable_sort(lines.begin(), lines.end(),
                   [](const SpectralLine& a, const SpectralLine& b) {
                     return a.lambda < b.lambda;
                   });
  return lines;
}

double bifurcation_instant(int p, int k, double tol, int n_grid) {
  if (k < 0 || k >= p)
    throw DomainError("bifurcation_instant: need 0 <= k <= p-1, the first "
                      "eigenvalue never reaches -p^2");
  if (!(tol > 0.0))
    throw DomainError("bifurcation_instant: tolerance must be positive");
  check_spectrum_inputs(p, 1.0, 1, n_grid);

  const double target = -double(k) * k;
  // A short interval keeps the Laplacian part dominant, so mu_1 starts above
  // any target level.
  double lo = 0.05 / p;
  int halvings = 0;
  while (mu1_extrapolated(p, lo, n_grid) <= target) {
    lo /= 2.0;
    if (++halvings > 40)
      throw NumericalError("bifurcation_instant: no positive start at grid " +
                           std::to_string(n_grid));
  }
  double hi = 2.0 * lo;
  int doublings = 0;
  while (mu1_extrapolated(p, hi, n_grid) >= target) {
    hi *= 2.0;
    if (++doublings > 40)
      throw NumericalError("bifurcation_instant: no crossing bracket at grid " +
                           std::to_string(n_grid));
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double mu = mu1_extrapolated(p, mid, n_grid);
    if (std::abs(mu - target) < tol || hi - lo < 1e-13 * mid)
      return mid;
    if (mu > target)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

double jacobi_field_mu0(int p, double a, double b, double r) {
  const double x = p * r;
  return a * std::tanh(x) + b * (1.0 - x * std::tanh(x));
}

double transversality(int p, double t1, double dt, int n_grid) {
  if (!(dt > 0.0) || !(t1 > dt))
    throw DomainError("transversality: need 0 < dt < t1");
  const double ahead = mu1_extrapolated(p, t1 + dt, n_grid);
  const double behind = mu1_extrapolated(p, t1 - dt, n_grid);
  const double slope = (ahead - behind) / (2.0 * dt);
  if (slope >= 0.0)
    throw NumericalError("transversality: eigenvalue slope came out non-negative");
  return slope;
}

bool mu2_positive_check(int p, double t1, int n_grid) {
  return radial_spectrum(p, t1, 2, n_grid).mus[1] > 0.0;
}

} // namespace ring
