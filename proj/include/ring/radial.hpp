#pragma once

#include "ring/field.hpp"
#include "ring/grid.hpp"

namespace ring {

enum class RadialKind { catenoidal, helicoidal };

// The two closed-form equivariant families on the annulus,
//   catenoidal:  alpha * (r^|p| + rho^|p| r^-|p|) e^{i p theta} / (1 + rho^|p|)
//   helicoidal:  alpha * (r^|p| - rho^|p| r^-|p|) e^{i p theta} / (1 - rho^|p|),
// unimodular on both boundary circles. Decaying powers are evaluated as
// (rho/r)^|p| so large |p| stays finite.
class RadialSolution : public Field {
public:
  RadialSolution(int p, double rho, RadialKind kind, cplx alpha = 1.0);

  FieldSample at(double r, double theta) const override;

  int p() const { return p_; }
  double rho() const { return rho_; }
  RadialKind kind() const { return kind_; }
  cplx alpha() const { return alpha_; }

private:
  int p_;
  double rho_;
  RadialKind kind_;
  cplx alpha_;
};

// Closed-form Dirichlet energy: 2*pi*|p|*(1 -+ rho^|p|)/(1 +- rho^|p|)
// (upper signs catenoidal, lower helicoidal).
double radial_energy(int p, double rho, RadialKind kind);

// Closed-form constant value of z^2 * (quadratic differential):
// -p^2 rho^|p|/(1+rho^|p|)^2 for catenoidal, +p^2 rho^|p|/(1-rho^|p|)^2
// for helicoidal.
double radial_hopf_constant(int p, double rho, RadialKind kind);

// g_p(rho) = (p-1) rho^p + p rho^{p-1} - 1, strictly increasing on [0,1].
double radial_energy_gap_indicator(int p, double rho);

// Unique root of the indicator in (0,1), bisected to 1e-12. Requires p >= 2.
double threshold_rho_prime(int p);

enum class Minimality { non_minimizing, inconclusive };

// One-sided energy-comparison criterion: below the threshold the degree-p
// catenoidal family loses against a split competitor, so it cannot minimize.
// Above it this test alone decides nothing.
Minimality minimality_test(int p, double rho);

// Sup over boundary samples of |u ^ du/dr| for the harmonic extension of
// outer = e^{i p theta}, inner = alpha e^{i q theta}. Vanishes exactly when
// q = p and alpha = +-1, the cases reducing to the radial families.
double steklov_compatibility(int p, int q, cplx alpha, double rho, const AnnulusGrid& grid);

// Sup over theta of |du/dr| on the circle r = sqrt(rho); zero for the
// catenoidal family, strictly positive for the helicoidal one.
double half_annulus_reduction_check(int p, double rho, const AnnulusGrid& grid,
                                    RadialKind kind = RadialKind::catenoidal);

} // namespace ring
