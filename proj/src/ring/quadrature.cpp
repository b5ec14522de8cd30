#include "ring/quadrature.hpp"

#include <cmath>

#include "ring/errors.hpp"

namespace ring {

std::vector<double> simpson_weights(int n, double h) {
  if (n < 3) throw DomainError("simpson_weights: need at least 3 nodes");
  if (!(h > 0.0)) throw DomainError("simpson_weights: spacing must be positive");
  std::vector<double> w(size_t(n), 0.0);
  int last = n - 1; // node count covered by the plain composite rule
  if (n % 2 == 0) last = n - 4;
  // composite Simpson over nodes [0, last]
  if (last >= 2) {
    w[0] += h / 3.0;
    w[size_t(last)] += h / 3.0;
    for (int i = 1; i < last; ++i) w[size_t(i)] += (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  if (n % 2 == 0) {
    // 3/8 closure over the remaining three intervals
    const double c = 3.0 * h / 8.0;
    w[size_t(n - 4)] += c;
    w[size_t(n - 3)] += 3.0 * c;
    w[size_t(n - 2)] += 3.0 * c;
    w[size_t(n - 1)] += c;
  }
  return w;
}

namespace {

// integrate fn(i, j) with Simpson weights radially and the periodic
// rectangle rule in angle
template <typename NodeFn>
double grid_integral(const AnnulusGrid& g, NodeFn&& fn) {
  const std::vector<double> wr = simpson_weights(g.n_r, g.dr());
  double total = 0.0;
  for (int j = 0; j < g.n_theta; ++j) {
    double radial = 0.0;
    for (int i = 0; i < g.n_r; ++i) radial += wr[size_t(i)] * fn(i, j);
    total += radial;
  }
  return total * g.dtheta();
}

} // namespace

double dirichlet_energy(const Field& f, const AnnulusGrid& grid) {
  return 0.5 * grid_integral(grid, [&](int i, int j) {
    const double r = grid.r(i);
    const FieldSample s = f.at(r, grid.theta(j));
    return (std::norm(s.ur) + std::norm(s.ut) / (r * r)) * r;
  });
}

double capacity(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("capacity: rho must lie in (0,1)");
  return 2.0 * pi / std::log(1.0 / rho);
}

double degree_difference_integral(const Field& f, const AnnulusGrid& grid) {
  return grid_integral(grid, [&](int i, int j) {
    const FieldSample s = f.at(grid.r(i), grid.theta(j));
    return std::imag(std::conj(s.ur) * s.ut);
  });
}

} // namespace ring
