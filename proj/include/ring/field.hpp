#pragma once

#include <complex>
#include <functional>
#include <memory>

namespace ring {

using cplx = std::complex<double>;

// Value together with the polar first derivatives at the sample point.
struct FieldSample {
  cplx u;   // u(r, theta)
  cplx ur;  // d/dr
  cplx ut;  // d/dtheta
};

// A complex-valued map on the annulus. Implementations either differentiate
// exactly (series, closed forms) or fall back to finite differences.
class Field {
public:
  virtual ~Field() = default;
  virtual FieldSample at(double r, double theta) const = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

// Wraps a plain value sampler; derivatives by central differences of the
// requested order (2 or 4) with step h. The sampler must be evaluable in a
// 2h-neighborhood of any queried radius.
class SampledField : public Field {
public:
  using Fn = std::function<cplx(double, double)>;

  SampledField(Fn fn, double h, int order = 4);
  FieldSample at(double r, double theta) const override;

private:
  Fn fn_;
  double h_;
  int order_;
};

// z -> f(rho / conj(z)), i.e. (r, theta) -> f(rho/r, theta). Swaps the two
// boundary circles and fixes |z| = sqrt(rho); Dirichlet energy is preserved.
FieldPtr kelvin_reflect(FieldPtr f, double rho);

} // namespace ring
