#pragma once

#include <cmath>
#include <numbers>

#include "ring/errors.hpp"

namespace ring {

inline constexpr double pi = std::numbers::pi;

// Uniform polar grid on the closed annulus rho <= r <= 1.
// Radial nodes include both boundary circles; angular nodes cover [0, 2*pi).
struct AnnulusGrid {
  double rho;
  int n_r;
  int n_theta;

  AnnulusGrid(double rho_, int n_r_, int n_theta_) : rho(rho_), n_r(n_r_), n_theta(n_theta_) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("AnnulusGrid: rho must lie in (0,1)");
    if (n_r < 3) throw DomainError("AnnulusGrid: need at least 3 radial nodes");
    if (n_theta < 8 || n_theta % 2 != 0)
      throw DomainError("AnnulusGrid: n_theta must be even and >= 8");
  }

  double dr() const { return (1.0 - rho) / (n_r - 1); }
  double dtheta() const { return 2.0 * pi / n_theta; }
  double r(int i) const { return rho + i * dr(); }
  double theta(int j) const { return j * dtheta(); }
};

} // namespace ring
