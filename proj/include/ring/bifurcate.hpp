#pragma once

#include <utility>
#include <vector>

#include "ring/lift.hpp"

namespace ring {

// Normal-graph perturbation of the p-fold wrapped catenoid
//   X_t(r, theta) = (cosh(tpr) cos(p theta), cosh(tpr) sin(p theta), tpr)
// restricted to the quarter domain [0,1] x [0,pi] of the (r, theta)
// rectangle [-1,1] x [-pi,pi]. The surfaces of interest are even in both
// variables, so a quarter grid represents them without redundancy: radial
// nodes r_i = i/(n_r-1) with the outer row clamped to zero, angular
// midpoints theta_j = (j + 1/2) pi / n_theta. Values are stored row-major,
// u[i*n_theta + j]. The reflections i -> -i and j -> -1-j, j -> 2*n_theta-1-j
// extend any stored grid evenly across the symmetry lines, so every
// represented surface is even by construction.
struct PerturbationGrid {
  int p = 1;
  double t = 1.0;
  int n_r = 0;
  int n_theta = 0;
  std::vector<double> u;

  PerturbationGrid() = default;
  PerturbationGrid(int p, double t, int n_r, int n_theta);

  double hr() const { return 1.0 / (n_r - 1); }
  double htheta() const;
  double rhat(int i) const { return i * hr(); }
  double theta(int j) const { return (j + 0.5) * htheta(); }

  // Stored value with the even reflections applied; i may be negative and j
  // may step one position past either angular edge.
  double value_folded(int i, int j) const;

  // Shape parameters, the graph bound sup|u| < 1, and the clamped outer row.
  // Throws DomainError on violation.
  void validate() const;
};

// L2 pairing of two grids over the full rectangle [-1,1] x [-pi,pi],
// evaluated on the quarter domain (trapezoidal weights in r, midpoint rule
// in theta, times four for the even reflections).
double inner_product(const PerturbationGrid& shape, const std::vector<double>& a,
                     const std::vector<double>& b);

// Mean curvature of Y = X_t + u N_t by second-order central differences with
// the fold conventions above, in the full grid layout (the outer row, where
// no stencil fits, is zero). Throws NumericalError if the perturbed surface
// fails to be immersed at some node.
std::vector<double> mean_curvature(const PerturbationGrid& pg);

// mean_curvature minus the same stencil evaluated at u = 0, so the exact
// catenoid is an exact discrete root rather than an O(h^2) one. Newton's
// method below drives this quantity to zero.
std::vector<double> curvature_residual(const PerturbationGrid& pg);

// Stability operator of the wrapped catenoid applied to v (full layout):
//   (1/(t^2 p^2 cosh^2 tpr)) [ D_r^2 v + t^2 (D_theta^2 v + 2 p^2 sech^2(tpr) v) ]
// discretized with the same folds. Equals twice the derivative of
// mean_curvature at u = 0, so the linearization tests carry a factor 1/2.
std::vector<double> jacobi_apply(const PerturbationGrid& pg, const std::vector<double>& v);

// Exact solve of (1/2) jacobi_apply(w) = rhs in the discrete sense, by a
// cosine-mode decomposition in theta and a symmetrized eigendecomposition of
// each radial block. Eigenvalues within 1e-8 of the spectral radius of zero
// are clamped in magnitude, which regularizes the solve near branching
// parameters; elsewhere the result is the exact discrete inverse.
std::vector<double> linearized_solve(const PerturbationGrid& shape,
                                     const std::vector<double>& rhs);

// Single-wave kernel candidate w(r) cos(theta): the radial factor is the
// eigenvector of the discrete single-wave radial block whose eigenvalue is
// closest to zero, scaled so inner_product(u1, u1) = 1 and positive at the
// neck. Returned in the full grid layout.
std::vector<double> kernel_mode(int p, double t, int n_r, int n_theta);

// Newton's method on curvature_residual at fixed t, matrix-free: GMRES on
// finite-difference directional derivatives, preconditioned by
// linearized_solve. Converges when sup|residual| < tol. Throws
// NumericalError after three consecutive residual increases, on loss of
// immersion or of the graph bound, or when max_iter runs out.
PerturbationGrid newton_solve(const PerturbationGrid& start, double tol, int max_iter);

struct BranchState {
  double t = 0.0;
  PerturbationGrid u;
  double amplitude = 0.0;
  double residual_norm = 0.0;
  int step_index = 0;
};

// Exchange of stability at the single-wave instant: solves the bordered
// system { curvature_residual(u, t) = 0, <u, u1> = amp } for (u, t) starting
// from amp * u1 at the critical parameter, where u1 = kernel_mode there. The
// pairing constraint removes the near-null direction, so Newton converges
// sideways onto the nonsymmetric branch. amp = 0 returns the trivial state.
// Requires p >= 2 (the single wave never destabilizes a simple catenoid).
BranchState branch_switch(int p, double amp, double tol = 1e-8, int n_r = 65,
                          int n_theta = 64);

// Pseudo-arclength continuation from a converged state. Each step predicts
// along the current secant tangent with increment ds (sign selects the
// direction), then corrects by the bordered Newton solve orthogonal to the
// tangent. A failed correction halves ds, at most five times. The initial
// tangent points away from the trivial branch at the single-wave instant, so
// the start should descend from branch_switch or an earlier continuation.
// Returns the n_steps accepted states in order.
std::vector<BranchState> continue_branch(const BranchState& start, int n_steps, double ds,
                                         double tol = 1e-8);

// Angular variance of the distance to the axis along the neck parallel
// r = 0. Vanishes on every rotationally symmetric surface; on the
// nonsymmetric branch it grows like the squared amplitude.
double nonsymmetry_metric(const BranchState& state);

// The same quantity for an exported mesh, maximized over vertex rows.
double nonsymmetry_metric(const SurfaceMesh& mesh);

// Signed minimum and maximum of u along the neck parallel.
std::pair<double, double> mid_parallel_range(const BranchState& state);

struct BoundaryReport {
  bool boundary_fixed = false;
  double radius_deviation = 0.0;
  double height_deviation = 0.0;
  int winding = 0;
  bool pass = false;
};

// Confirms the free rim stays put: the outer row of u vanishes identically,
// the rim parallel lies on the circle of radius cosh(tp) at height tp, and
// its horizontal trace winds p times around the axis. By evenness the lower
// rim is the mirror image of the upper one, so one report covers both.
BoundaryReport boundary_cover_check(const BranchState& state);

// Full surface of a branch state: both radial halves (2 n_r - 1 rows) and
// the whole circle (2 n_theta + 1 columns, the seam column duplicated so the
// tube closes). Metadata records p, t, and kind = "bifurcated".
SurfaceMesh bifurcation_mesh(const BranchState& state);

// Discrete area of the perturbed surface, trapezoidal in r and midpoint in
// theta, with one-sided difference stencils along the rim row.
double surface_area(const PerturbationGrid& pg);

} // namespace ring
