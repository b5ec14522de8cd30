#include "ring/harmonic.hpp"

#include <cmath>

#include "ring/errors.hpp"
#include "ring/fourier.hpp"

namespace ring {

BoundaryTrace sample_circle(const Field& f, double radius, int n_theta) {
  BoundaryTrace t;
  t.radius = radius;
  t.samples.resize(size_t(n_theta));
  for (int j = 0; j < n_theta; ++j)
    t.samples[size_t(j)] = f.at(radius, 2.0 * pi * j / n_theta).u;
  return t;
}

HarmonicField::HarmonicField(double rho, cplx a0, cplx b0, std::vector<HarmonicMode> modes)
    : rho_(rho), a0_(a0), b0_(b0), modes_(std::move(modes)) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("HarmonicField: rho must lie in (0,1)");
  bhat_.reserve(modes_.size());
  for (const auto& m : modes_) {
    if (m.n == 0) throw DomainError("HarmonicField: mode index must be nonzero");
    bhat_.push_back(m.B * std::pow(rho_, -double(std::abs(m.n))));
  }
}

FieldSample HarmonicField::at(double r, double theta) const {
  const double slack = 1e-9;
  if (r < rho_ * (1.0 - slack) || r > 1.0 + slack)
    throw DomainError("HarmonicField: radius outside the annulus");

  FieldSample s;
  s.u = a0_ + b0_ * std::log(r);
  s.ur = b0_ / r;
  s.ut = 0.0;
  for (size_t k = 0; k < modes_.size(); ++k) {
    const auto& m = modes_[k];
    const double an = double(std::abs(m.n));
    const double grow = std::pow(r, an);
    const double decay = std::pow(rho_ / r, an);
    const cplx radial = m.A * grow + bhat_[k] * decay;
    const cplx dradial = (m.A * grow - bhat_[k] * decay) * (an / r);
    const cplx e = std::polar(1.0, m.n * theta);
    s.u += radial * e;
    s.ur += dradial * e;
    s.ut += radial * e * cplx(0.0, double(m.n));
  }
  return s;
}

HarmonicField harmonic_extension(const BoundaryTrace& inner, const BoundaryTrace& outer,
                                 double rho, int n_modes) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("harmonic_extension: rho must lie in (0,1)");
  if (inner.samples.size() != outer.samples.size())
    throw DomainError("harmonic_extension: traces have mismatched sample counts");
  const int nt = int(inner.samples.size());
  if (nt < 2) throw DomainError("harmonic_extension: traces too short");
  if (n_modes < 0 || 2 * n_modes > nt)
    throw DomainError("harmonic_extension: n_modes exceeds n_theta/2");

  const AngularModes am = angular_modes(inner.samples);
  const AngularModes bm = angular_modes(outer.samples);

  const cplx a0 = am.mode(0);
  const cplx b0 = bm.mode(0);

  std::vector<HarmonicMode> modes;
  std::vector<cplx> bhat;
  for (int n = -n_modes; n <= n_modes; ++n) {
    if (n == 0) continue;
    if (2 * std::abs(n) == nt && n < 0) continue; // shared transform bin, kept at +n
    const cplx an = am.mode(n);
    const cplx bn = bm.mode(n);
    if (an == cplx(0.0) && bn == cplx(0.0)) continue;
    const double k = double(std::abs(n));
    const double rk = std::pow(rho, k);
    const double denom = 1.0 - rk * rk;
    const cplx A = (bn - an * rk) / denom;
    const cplx Bh = (an - rk * bn) / denom; // = B_n * rho^{-|n|}
    modes.push_back({n, A, Bh * rk});
    bhat.push_back(Bh);
  }

  HarmonicField f(rho, b0, (a0 - b0) / std::log(rho), std::move(modes));
  f.bhat_ = std::move(bhat); // replace the pow-derived cache with the stable values
  return f;
}

} // namespace ring
