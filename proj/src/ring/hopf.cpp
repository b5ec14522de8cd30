#include "ring/hopf.hpp"

#include <cmath>
#include <vector>

#include "ring/errors.hpp"

namespace ring {

HopfReport hopf_constant_check(const Field& f, const AnnulusGrid& grid) {
  if (grid.n_r < 3) throw DomainError("hopf_constant_check: grid has no interior nodes");
  std::vector<double> re;
  re.reserve(size_t(grid.n_r - 2) * size_t(grid.n_theta));
  double max_imag = 0.0;
  for (int i = 1; i < grid.n_r - 1; ++i) {
    const double r = grid.r(i);
    for (int j = 0; j < grid.n_theta; ++j) {
      const FieldSample s = f.at(r, grid.theta(j));
      const double wre = 0.25 * (r * r * std::norm(s.ur) - std::norm(s.ut));
      const double wim = -0.5 * r * std::real(std::conj(s.ur) * s.ut);
      re.push_back(wre);
      max_imag = std::max(max_imag, std::abs(wim));
    }
  }
  double mean = 0.0;
  for (double v : re) mean += v;
  mean /= double(re.size());
  double max_dev = 0.0;
  for (double v : re) max_dev = std::max(max_dev, std::abs(v - mean));
  return {mean, max_dev, max_imag};
}

} // namespace ring
