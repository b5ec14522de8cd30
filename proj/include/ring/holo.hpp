#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ring/field.hpp"
#include "ring/grid.hpp"
#include "ring/hopf.hpp"

namespace ring {

// p - q prescribed zeros inside the annulus whose moduli satisfy
//   sum_i ln|x_i| / ln rho = -q,
// the compatibility condition making the associated product unimodular on
// the inner circle.
struct ZeroSet {
  double rho;
  int p; // outer boundary degree, > 0
  int q; // inner boundary degree, < 0
  std::vector<cplx> zeros;
  double constraint_residual = 0.0; // |sum ln|x_i|/ln rho + q|
};

// Validates degrees and seed positions, then rescales all seed moduli by a
// common exponent (scalar bisection) so the constraint holds exactly.
// Empty seeds get the canonical fan: p-q points equally spaced in angle at
// modulus rho^{|q|/(p-q)}.
ZeroSet make_zero_set(int p, int q, double rho, const std::vector<cplx>& seeds);

nlohmann::json zero_set_to_json(const ZeroSet& zs);
ZeroSet zero_set_from_json(const nlohmann::json& j);
void save_zero_set(const ZeroSet& zs, const std::string& path);
ZeroSet load_zero_set(const std::string& path);

// One Blaschke-type annulus factor: vanishes at x, unimodular on |z|=1, and
// constant-modulus on |z|=rho. Infinite product truncated at order K with
// tail below eps; K = ceil(ln(eps*(1-rho^2)) / (2 ln rho)) + 5.
int factor_truncation_order(double rho, double eps);
cplx f_factor(cplx x, cplx z, double rho, double eps);

// u(z) = z^q * prod_i |x_i| f_{x_i}(z): holomorphic on the annulus, unimodular
// on both boundary circles, degrees (p, q), energy pi*(p + |q|).
class ProductSolution : public Field {
public:
  ProductSolution(ZeroSet zs, double eps);

  cplx value(cplx z) const;
  std::pair<cplx, cplx> value_and_derivative(cplx z) const;
  FieldSample at(double r, double theta) const override;

  const ZeroSet& zero_set() const { return zs_; }
  int truncation_order() const { return K_; }
  double eps() const { return eps_; }

private:
  ZeroSet zs_;
  int K_;
  double eps_;
};

ProductSolution build_solution(const ZeroSet& zs, double eps);

// Everything validate_solution measures, with the target values it is
// measured against. Pass/fail thresholds live with the caller (CLI).
struct SolutionReport {
  double boundary_modulus_deviation; // sup | |u| - 1 | over both circles
  int degree_outer, degree_inner;    // should equal p, q
  int zero_count;                    // should equal p - q
  double energy;
  double energy_expected; // pi * (p + |q|)
  HopfReport hopf;        // c_estimate should vanish
};

SolutionReport validate_solution(const ProductSolution& u, const AnnulusGrid& grid);

// Zeros of f enclosed between the two circles, by the argument principle:
// winding on the outer contour minus winding on the inner one. A vanishing
// trace sample triggers a small radius perturbation before giving up.
int argument_principle_count(const Field& f, double radius_inner, double radius_outer,
                             int n_samples);

} // namespace ring
