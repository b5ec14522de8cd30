#include "ring/field.hpp"

#include <cmath>

#include "ring/errors.hpp"

namespace ring {

SampledField::SampledField(Fn fn, double h, int order)
    : fn_(std::move(fn)), h_(h), order_(order) {
  if (!(h > 0.0)) throw DomainError("SampledField: step must be positive");
  if (order != 2 && order != 4) throw DomainError("SampledField: order must be 2 or 4");
}

FieldSample SampledField::at(double r, double theta) const {
  FieldSample s;
  s.u = fn_(r, theta);
  const double h = h_;
  if (order_ == 2) {
    s.ur = (fn_(r + h, theta) - fn_(r - h, theta)) / (2.0 * h);
    s.ut = (fn_(r, theta + h) - fn_(r, theta - h)) / (2.0 * h);
  } else {
    s.ur = (-fn_(r + 2 * h, theta) + 8.0 * fn_(r + h, theta) - 8.0 * fn_(r - h, theta) +
            fn_(r - 2 * h, theta)) /
           (12.0 * h);
    s.ut = (-fn_(r, theta + 2 * h) + 8.0 * fn_(r, theta + h) - 8.0 * fn_(r, theta - h) +
            fn_(r, theta - 2 * h)) /
           (12.0 * h);
  }
  return s;
}

namespace {

class KelvinField : public Field {
public:
  KelvinField(FieldPtr f, double rho) : f_(std::move(f)), rho_(rho) {}

  FieldSample at(double r, double theta) const override {
    const double rr = rho_ / r;
    const FieldSample inner = f_->at(rr, theta);
    FieldSample s;
    s.u = inner.u;
    s.ur = inner.ur * (-rho_ / (r * r));
    s.ut = inner.ut;
    return s;
  }

private:
  FieldPtr f_;
  double rho_;
};

} // namespace

FieldPtr kelvin_reflect(FieldPtr f, double rho) {
  if (!f) throw DomainError("kelvin_reflect: null field");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("kelvin_reflect: rho must lie in (0,1)");
  return std::make_shared<KelvinField>(std::move(f), rho);
}

} // namespace ring
