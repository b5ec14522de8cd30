#include "ring/radial.hpp"

#include <cmath>

#include "ring/errors.hpp"
#include "ring/harmonic.hpp"

namespace ring {

RadialSolution::RadialSolution(int p, double rho, RadialKind kind, cplx alpha)
    : p_(p), rho_(rho), kind_(kind), alpha_(alpha) {
  if (p == 0) throw DomainError("RadialSolution: p must be nonzero");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("RadialSolution: rho must lie in (0,1)");
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw DomainError("RadialSolution: alpha must be unimodular");
}

FieldSample RadialSolution::at(double r, double theta) const {
  const double m = double(std::abs(p_));
  const double s = std::pow(rho_, m);
  const double grow = std::pow(r, m);
  const double decay = std::pow(rho_ / r, m); // rho^m * r^-m
  const double sign = kind_ == RadialKind::catenoidal ? 1.0 : -1.0;
  const double denom = 1.0 + sign * s;
  const double R = (grow + sign * decay) / denom;
  const double dR = m * (grow - sign * decay) / (r * denom);
  const cplx e = alpha_ * std::polar(1.0, p_ * theta);
  return {R * e, dR * e, R * e * cplx(0.0, double(p_))};
}

double radial_energy(int p, double rho, RadialKind kind) {
  if (p == 0) throw DomainError("radial_energy: p must be nonzero");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("radial_energy: rho must lie in (0,1)");
  const double m = double(std::abs(p));
  const double s = std::pow(rho, m);
  return kind == RadialKind::catenoidal ? 2.0 * pi * m * (1.0 - s) / (1.0 + s)
                                        : 2.0 * pi * m * (1.0 + s) / (1.0 - s);
}

double radial_hopf_constant(int p, double rho, RadialKind kind) {
  if (p == 0) throw DomainError("radial_hopf_constant: p must be nonzero");
  if (!(rho > 0.0 && rho < 1.0))
    throw DomainError("radial_hopf_constant: rho must lie in (0,1)");
  const double m = double(std::abs(p));
  const double s = std::pow(rho, m);
  return kind == RadialKind::catenoidal ? -m * m * s / ((1.0 + s) * (1.0 + s))
                                        : m * m * s / ((1.0 - s) * (1.0 - s));
}

double radial_energy_gap_indicator(int p, double rho) {
  return (p - 1.0) * std::pow(rho, p) + p * std::pow(rho, p - 1.0) - 1.0;
}

double threshold_rho_prime(int p) {
  if (p < 2) throw DomainError("threshold_rho_prime: defined for p >= 2");
  double lo = 1e-9, hi = 1.0 - 1e-9;
  if (!(radial_energy_gap_indicator(p, lo) < 0.0 && radial_energy_gap_indicator(p, hi) > 0.0))
    throw NumericalError("threshold_rho_prime: bracket does not straddle the root");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (radial_energy_gap_indicator(p, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Minimality minimality_test(int p, double rho) {
  if (p < 2) throw DomainError("minimality_test: defined for p >= 2");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("minimality_test: rho must lie in (0,1)");
  return radial_energy_gap_indicator(p, rho) < 0.0 ? Minimality::non_minimizing
                                                   : Minimality::inconclusive;
}

double steklov_compatibility(int p, int q, cplx alpha, double rho, const AnnulusGrid& grid) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw DomainError("steklov_compatibility: alpha must be unimodular");
  const int need = std::max(std::abs(p), std::abs(q));
  if (2 * need >= grid.n_theta)
    throw DomainError("steklov_compatibility: grid cannot resolve the requested modes");

  BoundaryTrace outer, inner;
  outer.radius = 1.0;
  inner.radius = rho;
  outer.samples.resize(size_t(grid.n_theta));
  inner.samples.resize(size_t(grid.n_theta));
  for (int j = 0; j < grid.n_theta; ++j) {
    const double th = grid.theta(j);
    outer.samples[size_t(j)] = std::polar(1.0, p * th);
    inner.samples[size_t(j)] = alpha * std::polar(1.0, q * th);
  }
  const HarmonicField u = harmonic_extension(inner, outer, rho, need);

  double sup = 0.0;
  for (double r : {rho, 1.0}) {
    for (int j = 0; j < grid.n_theta; ++j) {
      const FieldSample s = u.at(r, grid.theta(j));
      sup = std::max(sup, std::abs(std::imag(std::conj(s.u) * s.ur)));
    }
  }
  return sup;
}

double half_annulus_reduction_check(int p, double rho, const AnnulusGrid& grid,
                                    RadialKind kind) {
  const RadialSolution u(p, rho, kind);
  const double mid = std::sqrt(rho);
  double sup = 0.0;
  for (int j = 0; j < grid.n_theta; ++j)
    sup = std::max(sup, std::abs(u.at(mid, grid.theta(j)).ur));
  return sup;
}

} // namespace ring
