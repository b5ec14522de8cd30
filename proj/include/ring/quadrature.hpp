#pragma once

#include <vector>

#include "ring/field.hpp"
#include "ring/grid.hpp"

namespace ring {

// Composite Simpson weights on n uniform nodes with spacing h (n >= 3).
// Even node counts get a 3/8 closure on the last three intervals.
std::vector<double> simpson_weights(int n, double h);

// (1/2) * integral over the annulus of |grad u|^2, i.e.
// (1/2) * |du/dr|^2 + r^-2 |du/dtheta|^2 weighted by r dr dtheta.
// Trapezoid (periodic) in theta, Simpson in r.
double dirichlet_energy(const Field& f, const AnnulusGrid& grid);

// Conformal capacity of the annulus rho < |z| < 1: 2*pi / ln(1/rho).
double capacity(double rho);

// Quadrature of the Jacobian-type integrand du/dx ^ du/dy over the annulus
// (equal to the wedge of the polar derivatives in dr dtheta). For maps with
// unimodular boundary traces of degrees (p, q) this equals pi*(p - q); for
// anything else the raw integral is returned.
double degree_difference_integral(const Field& f, const AnnulusGrid& grid);

} // namespace ring
