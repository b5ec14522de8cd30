#include "ring/winding.hpp"

#include <cmath>

#include "ring/errors.hpp"

namespace ring {

namespace {

// phase change along the closed polyline; max_step reports the largest jump
double unwrapped_phase(const std::vector<cplx>& s, double& max_step) {
  double total = 0.0;
  max_step = 0.0;
  const size_t n = s.size();
  for (size_t j = 0; j < n; ++j) {
    const cplx a = s[j];
    const cplx b = s[(j + 1) % n];
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
      throw NumericalError("winding_degree: trace passes through zero, degree undefined");
    const double step = std::arg(b / a);
    max_step = std::max(max_step, std::abs(step));
    total += step;
  }
  return total;
}

} // namespace

int winding_degree(const BoundaryTrace& trace) {
  if (trace.samples.size() < 4) throw DomainError("winding_degree: trace too short");
  double max_step = 0.0;
  const double total = unwrapped_phase(trace.samples, max_step);
  if (max_step >= pi * (1.0 - 1e-9))
    throw NumericalError("winding_degree: phase step of half a turn, winding ambiguous");
  return int(std::lround(total / (2.0 * pi)));
}

int winding_degree(const Field& f, double radius, int n_start) {
  if (n_start < 4) throw DomainError("winding_degree: need at least 4 samples");
  int n = n_start;
  const int n_cap = 1 << 22;
  while (true) {
    std::vector<cplx> s(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) s[size_t(j)] = f.at(radius, 2.0 * pi * j / n).u;
    double max_step = 0.0;
    const double total = unwrapped_phase(s, max_step);
    if (max_step < pi / 2.0) return int(std::lround(total / (2.0 * pi)));
    if (n >= n_cap)
      throw NumericalError("winding_degree: phase steps stay large under refinement");
    n *= 2;
  }
}

} // namespace ring
