#pragma once

#include <array>
#include <vector>

#include "ring/linalg.hpp"

namespace ring {

// The p-fold covered catenoid of half-height t, parametrized on
// [-1,1] x [-pi,pi]:
//   X(r, theta) = (cosh(tpr) cos(p theta), cosh(tpr) sin(p theta), tpr).
struct CatenoidFamily {
  int p;
  double t;

  CatenoidFamily(int p_, double t_);

  std::array<double, 3> position(double r, double theta) const;
  std::array<double, 3> normal(double r, double theta) const;
};

// First and second fundamental form coefficients and the Gauss curvature of
// the family at parameter radius r; all depend on r alone.
struct FundamentalForms {
  double E, F, G; // first form
  double e, f, g; // second form
  double K;       // Gauss curvature
};

FundamentalForms fundamental_forms(int p, double t, double r);

// Lowest Dirichlet eigenvalues of -w'' - (2 p^2 / cosh^2(p r)) w = mu w on
// [-t, t]. mus carries Richardson-extrapolated values from one grid
// doubling; eigenvectors live on the declared n_grid nodes (boundary zeros
// included), unit Euclidean norm, positive at their largest entry.
struct SpectrumResult {
  int p;
  double t;
  int n_grid;
  std::vector<double> mus;
  std::vector<std::vector<double>> eigenvectors;
  double refinement_estimate;
};

SpectrumResult radial_spectrum(int p, double t, int k_eigs, int n_grid);

// One surface eigenvalue lambda = mu_j + n^2; angular modes are counted once
// per frequency n = 0..n_max (each n >= 1 has a twin differing by the
// angular phase only).
struct SpectralLine {
  double lambda;
  int radial_index; // 1-based: which mu
  int angular_mode; // n
};

std::vector<SpectralLine> full_spectrum(int p, double t, int n_max, int k_eigs,
                                        int n_grid = 801);

// The half-height t_k at which mu_1(t) crosses -k^2, located by bisection in
// t; tol is the accepted residual of mu_1(t_k) + k^2. Requires 0 <= k <= p-1:
// mu_1 stays above -p^2 for every finite t, so higher k never crosses.
double bifurcation_instant(int p, int k, double tol, int n_grid = 801);

// Closed-form solution a tanh(pr) + b (1 - pr tanh(pr)) of the mu = 0 radial
// equation.
double jacobi_field_mu0(int p, double a, double b, double r);

// Central-difference derivative of lambda_2(t) = mu_1(t) + 1 at t1. Negative
// for a genuine crossing; a non-negative value flags a discretization
// failure and throws.
double transversality(int p, double t1, double dt, int n_grid = 801);

// True iff the second radial eigenvalue is still positive at t1, which keeps
// the kernel one-dimensional within the rotationally even class.
bool mu2_positive_check(int p, double t1, int n_grid = 801);

} // namespace ring
