#pragma once

#include "ring/field.hpp"
#include "ring/harmonic.hpp"

namespace ring {

// Total unwrapped phase change around the trace divided by 2*pi, rounded to
// the nearest integer. Exact when every per-step phase change stays below pi;
// an ambiguous step (>= pi up to rounding) or a vanishing sample throws.
int winding_degree(const BoundaryTrace& trace);

// Same, but sampling the field on |z| = radius and doubling the sample count
// until every phase step is below pi/2.
int winding_degree(const Field& f, double radius, int n_start = 256);

} // namespace ring
