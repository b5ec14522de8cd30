#include "ring/holo.hpp"

#include <cmath>
#include <fstream>

#include "ring/errors.hpp"
#include "ring/quadrature.hpp"
#include "ring/winding.hpp"

namespace ring {

namespace {

void check_pq(int p, int q) {
  if (p <= 0) throw DomainError("zero set: outer degree p must be positive");
  if (q >= 0) throw DomainError("zero set: inner degree q must be negative");
}

double constraint_residual_of(const std::vector<cplx>& zeros, double rho, int q) {
  double s = 0.0;
  for (cplx x : zeros) s += std::log(std::abs(x));
  return std::abs(s / std::log(rho) + double(q));
}

// value and z-derivative of one annulus factor; assumes z away from poles
struct FactorEval {
  cplx f, df;
};

FactorEval eval_factor(cplx x, cplx z, double rho, int K) {
  const cplx xb = std::conj(x);
  // nonvanishing part g with f = (1 - z/x) * g
  cplx g = 1.0 / (1.0 - z * xb);
  cplx glog = xb / (1.0 - z * xb); // g'/g
  const cplx z2 = z * z;
  double b = 1.0;
  for (int k = 1; k <= K; ++k) {
    b *= rho * rho;
    const cplx n1 = 1.0 - b * z / x;
    const cplx n2 = 1.0 - b * x / z;
    const cplx d1 = 1.0 - b / (z * xb);
    const cplx d2 = 1.0 - b * z * xb;
    g *= n1 * n2 / (d1 * d2);
    glog += (-b / x) / n1 + (b * x / z2) / n2 - (b / (xb * z2)) / d1 + (b * xb) / d2;
  }
  const cplx lead = 1.0 - z / x;
  return {lead * g, g * (-1.0 / x) + lead * g * glog};
}

void check_not_near_pole(cplx x, cplx z, double rho, int K, double eps) {
  // the exclusion radius tracks the accuracy request but stays small even
  // for deliberately coarse truncations
  const double guard = std::min(eps, 1e-6);
  if (std::abs(z) <= guard)
    throw DomainError("f_factor: z at the origin, inside the pole cluster");
  const cplx xb = std::conj(x);
  if (std::abs(z - 1.0 / xb) <= guard)
    throw DomainError("f_factor: z within eps of pole 1/conj(x)");
  double b = 1.0;
  for (int k = 1; k <= K; ++k) {
    b *= rho * rho;
    if (std::abs(z - b / xb) <= guard)
      throw DomainError("f_factor: z within eps of a reflected pole");
  }
}

} // namespace

ZeroSet make_zero_set(int p, int q, double rho, const std::vector<cplx>& seeds) {
  check_pq(p, q);
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("make_zero_set: rho must lie in (0,1)");
  const int n = p - q;

  ZeroSet zs;
  zs.rho = rho;
  zs.p = p;
  zs.q = q;

  if (seeds.empty()) {
    const double mod = std::pow(rho, double(-q) / double(n));
    zs.zeros.resize(size_t(n));
    for (int i = 0; i < n; ++i) zs.zeros[size_t(i)] = std::polar(mod, 2.0 * pi * i / n);
    zs.constraint_residual = constraint_residual_of(zs.zeros, rho, q);
    return zs;
  }

  if (int(seeds.size()) != n)
    throw DomainError("make_zero_set: expected " + std::to_string(n) + " seeds, got " +
                      std::to_string(seeds.size()));
  for (size_t i = 0; i < seeds.size(); ++i) {
    const double m = std::abs(seeds[i]);
    if (!(m > rho && m < 1.0))
      throw DomainError("make_zero_set: seed " + std::to_string(i) + " outside the open annulus");
  }

  // common modulus rescale |x| -> |x|^s; the constraint needs
  // sum s*ln|x_i| = -q*ln(rho), and F below is strictly decreasing in s
  // (every ln|x_i| < 0) with F(0) > 0
  double logsum = 0.0;
  for (cplx x : seeds) logsum += std::log(std::abs(x));
  const double target = -double(q) * std::log(rho); // < 0
  auto F = [&](double s) { return s * logsum - target; };

  double lo = 0.0, hi = 1.0;
  while (F(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("make_zero_set: projection exponent out of range");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) > 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);

  zs.zeros.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    const cplx x = seeds[size_t(i)];
    const double m = std::pow(std::abs(x), s);
    if (!(m > rho && m < 1.0))
      throw DomainError("make_zero_set: projection pushes seed " + std::to_string(i) +
                        " outside the annulus");
    zs.zeros[size_t(i)] = std::polar(m, std::arg(x));
  }
  zs.constraint_residual = constraint_residual_of(zs.zeros, rho, q);
  if (zs.constraint_residual > 1e-12)
    throw NumericalError("make_zero_set: projection left residual above 1e-12");
  return zs;
}

nlohmann::json zero_set_to_json(const ZeroSet& zs) {
  nlohmann::json zeros = nlohmann::json::array();
  for (cplx x : zs.zeros) zeros.push_back({{"re", x.real()}, {"im", x.imag()}});
  return {{"rho", zs.rho}, {"p", zs.p}, {"q", zs.q}, {"zeros", zeros}};
}

ZeroSet zero_set_from_json(const nlohmann::json& j) {
  std::vector<cplx> zeros;
  for (const auto& x : j.at("zeros"))
    zeros.emplace_back(x.at("re").get<double>(), x.at("im").get<double>());
  // re-run validation and the residual bookkeeping
  return make_zero_set(j.at("p").get<int>(), j.at("q").get<int>(), j.at("rho").get<double>(),
                       zeros);
}

void save_zero_set(const ZeroSet& zs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << zero_set_to_json(zs).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

ZeroSet load_zero_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return zero_set_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad zero set file " + path + ": " + e.what());
  }
}

int factor_truncation_order(double rho, double eps) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("factor_truncation_order: bad rho");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("factor_truncation_order: bad eps");
  return int(std::ceil(std::log(eps * (1.0 - rho * rho)) / (2.0 * std::log(rho)))) + 5;
}

cplx f_factor(cplx x, cplx z, double rho, double eps) {
  const double m = std::abs(x);
  if (!(m > rho && m < 1.0)) throw DomainError("f_factor: x outside the open annulus");
  const int K = factor_truncation_order(rho, eps);
  check_not_near_pole(x, z, rho, K, eps);
  return eval_factor(x, z, rho, K).f;
}

ProductSolution::ProductSolution(ZeroSet zs, double eps) : zs_(std::move(zs)), eps_(eps) {
  check_pq(zs_.p, zs_.q);
  if (int(zs_.zeros.size()) != zs_.p - zs_.q)
    throw DomainError("ProductSolution: zero count must equal p - q");
  if (constraint_residual_of(zs_.zeros, zs_.rho, zs_.q) > 1e-12)
    throw DomainError("ProductSolution: zero moduli violate the constraint");
  K_ = factor_truncation_order(zs_.rho, eps);
}

std::pair<cplx, cplx> ProductSolution::value_and_derivative(cplx z) const {
  // scale prod |x_i| carried in log space; the running product keeps only the
  // O(1) factors so long zero lists cannot underflow
  double logscale = 0.0;
  for (cplx x : zs_.zeros) {
    logscale += std::log(std::abs(x));
    check_not_near_pole(x, z, zs_.rho, K_, eps_);
  }

  const double r = std::abs(z);
  const double th = std::arg(z);
  const double q = double(zs_.q);
  cplx v = std::polar(std::pow(r, q), q * th); // z^q
  cplx d = q * v / z;                          // q z^{q-1}
  for (cplx x : zs_.zeros) {
    const FactorEval fe = eval_factor(x, z, zs_.rho, K_);
    d = d * fe.f + v * fe.df;
    v = v * fe.f;
  }
  const double scale = std::exp(logscale);
  return {v * scale, d * scale};
}

cplx ProductSolution::value(cplx z) const { return value_and_derivative(z).first; }

FieldSample ProductSolution::at(double r, double theta) const {
  const cplx z = std::polar(r, theta);
  const auto [v, d] = value_and_derivative(z);
  const cplx e = std::polar(1.0, theta);
  return {v, d * e, d * cplx(0.0, 1.0) * z};
}

ProductSolution build_solution(const ZeroSet& zs, double eps) {
  return ProductSolution(zs, eps);
}

SolutionReport validate_solution(const ProductSolution& u, const AnnulusGrid& grid) {
  const ZeroSet& zs = u.zero_set();
  SolutionReport rep;

  double dev = 0.0;
  for (double r : {zs.rho, 1.0})
    for (int j = 0; j < grid.n_theta; ++j)
      dev = std::max(dev, std::abs(std::abs(u.at(r, grid.theta(j)).u) - 1.0));
  rep.boundary_modulus_deviation = dev;

  rep.degree_outer = winding_degree(u, 1.0, grid.n_theta);
  rep.degree_inner = winding_degree(u, zs.rho, grid.n_theta);
  rep.zero_count = argument_principle_count(u, zs.rho, 1.0, 8 * grid.n_theta);
  rep.energy = dirichlet_energy(u, grid);
  rep.energy_expected = pi * double(zs.p + std::abs(zs.q));
  rep.hopf = hopf_constant_check(u, grid);
  return rep;
}

int argument_principle_count(const Field& f, double radius_inner, double radius_outer,
                             int n_samples) {
  if (n_samples < 8) throw DomainError("argument_principle_count: too few samples");
  if (!(radius_inner < radius_outer))
    throw DomainError("argument_principle_count: radii out of order");

  auto contour_winding = [&](double r0, double dir) -> int {
    const double bump = 1e-3 * (radius_outer - radius_inner);
    for (int attempt = 0; attempt < 3; ++attempt) {
      const double r = r0 + dir * attempt * bump;
      std::vector<cplx> s(static_cast<size_t>(n_samples));
      bool ok = true;
      for (int j = 0; j < n_samples && ok; ++j) {
        s[size_t(j)] = f.at(r, 2.0 * pi * j / n_samples).u;
        if (std::abs(s[size_t(j)]) < 1e-13) ok = false;
      }
      if (!ok) continue;
      try {
        BoundaryTrace t{std::move(s), r};
        return winding_degree(t);
      } catch (const NumericalError&) {
        // zero-adjacent or ambiguous trace: nudge the contour and retry
      }
    }
    throw NumericalError("argument_principle_count: trace keeps hitting zeros");
  };

  // retries nudge each contour into the counted annulus, so the evaluation
  // domain is never left; a zero sitting that close to a contour makes the
  // count ill-posed either way
  const int w_out = contour_winding(radius_outer, -1.0);
  const int w_in = contour_winding(radius_inner, +1.0);
  return w_out - w_in;
}

} // namespace ring
