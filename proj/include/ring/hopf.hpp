#pragma once

#include "ring/field.hpp"
#include "ring/grid.hpp"

namespace ring {

// Diagnostics for the quadratic differential of a map u on the annulus.
// With w(z) = z^2 * (du/dz)(d conj(u)/dz), a solution of the mixed
// free-boundary problem has w constant and real; see hopf_constant_check.
struct HopfReport {
  double c_estimate;         // mean of Re w over interior nodes
  double max_real_deviation; // sup |Re w - c_estimate|
  double max_imag_part;      // sup |Im w|
};

// Evaluates 4 w = r^2|du/dr|^2 - |du/dtheta|^2 - 2 i r <du/dr, du/dtheta>
// at the interior grid nodes.
HopfReport hopf_constant_check(const Field& f, const AnnulusGrid& grid);

} // namespace ring
