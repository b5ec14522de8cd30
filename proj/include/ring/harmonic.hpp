#pragma once

#include <vector>

#include "ring/field.hpp"
#include "ring/grid.hpp"

namespace ring {

// Samples of a map on one boundary circle, uniform in angle starting at theta=0.
struct BoundaryTrace {
  std::vector<cplx> samples;
  double radius = 1.0;
};

BoundaryTrace sample_circle(const Field& f, double radius, int n_theta);

struct HarmonicMode {
  int n;   // nonzero angular index
  cplx A;  // coefficient of r^|n| e^{i n theta}
  cplx B;  // coefficient of r^{-|n|} e^{i n theta}
};

// Truncated series A0 + B0 ln r + sum_n (A_n r^|n| + B_n r^-|n|) e^{i n theta}
// on the closed annulus rho <= |z| <= 1. Evaluation keeps the decaying part in
// the form (B_n rho^-|n|) * (rho/r)^|n| so small rho and large n cannot
// overflow; bhat caches those rescaled coefficients.
class HarmonicField : public Field {
public:
  HarmonicField(double rho, cplx a0, cplx b0, std::vector<HarmonicMode> modes);

  FieldSample at(double r, double theta) const override;

  double rho() const { return rho_; }
  cplx a0() const { return a0_; }
  cplx b0() const { return b0_; }
  const std::vector<HarmonicMode>& modes() const { return modes_; }

private:
  friend HarmonicField harmonic_extension(const BoundaryTrace&, const BoundaryTrace&, double, int);

  double rho_;
  cplx a0_, b0_;
  std::vector<HarmonicMode> modes_;
  std::vector<cplx> bhat_; // B_n * rho^{-|n|}, aligned with modes_
};

// Unique harmonic interpolant of the two traces, truncated to |n| <= n_modes.
// At |n| = n_theta/2 the transform cannot split +n from -n; that bin is
// assigned to +n.
HarmonicField harmonic_extension(const BoundaryTrace& inner, const BoundaryTrace& outer,
                                 double rho, int n_modes);

} // namespace ring
