#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>

#include "ring/errors.hpp"
#include "ring/grid.hpp"
#include "ring/holo.hpp"
#include "ring/quadrature.hpp"
#include "ring/winding.hpp"

using ring::cplx;
using ring::pi;

namespace {

struct TestField : ring::Field {
  std::function<ring::FieldSample(double, double)> fn;
  explicit TestField(std::function<ring::FieldSample(double, double)> f) : fn(std::move(f)) {}
  ring::FieldSample at(double r, double t) const override { return fn(r, t); }
};

TestField shifted_identity(cplx x0) {
  return TestField([x0](double r, double t) -> ring::FieldSample {
    const cplx e = std::polar(1.0, t);
    return {r * e - x0, e, cplx(0.0, 1.0) * r * e};
  });
}

} // namespace

TEST_CASE("zero sets from seeds already on the constraint surface") {
  const double rho = 0.5;
  const double m = std::sqrt(rho);
  const auto zs = ring::make_zero_set(1, -1, rho, {std::polar(m, 0.3), std::polar(m, 2.1)});
  CHECK(zs.constraint_residual < 1e-14);
  for (cplx x : zs.zeros) CHECK(std::abs(std::abs(x) - m) < 1e-12);
  CHECK(std::arg(zs.zeros[0]) == doctest::Approx(0.3).epsilon(1e-13));

  const double m3 = std::pow(0.3, 1.0 / 3.0);
  const auto zs3 = ring::make_zero_set(
      2, -1, 0.3, {std::polar(m3, 0.0), std::polar(m3, 1.0), std::polar(m3, 4.0)});
  CHECK(zs3.constraint_residual < 1e-13);
}

TEST_CASE("random seeds project onto the constraint surface") {
  std::mt19937 rng(2024);
  // moduli near rho^{1/2} keep the common-exponent projection feasible
  std::uniform_real_distribution<double> um(0.64, 0.78), ua(0.0, 2.0 * pi);
  std::vector<cplx> seeds;
  for (int i = 0; i < 4; ++i) seeds.push_back(std::polar(um(rng), ua(rng)));
  const auto zs = ring::make_zero_set(2, -2, 0.5, seeds);
  CHECK(zs.constraint_residual < 1e-14);
  for (size_t i = 0; i < seeds.size(); ++i) {
    CHECK(std::arg(zs.zeros[i]) == doctest::Approx(std::arg(seeds[i])).epsilon(1e-13));
    CHECK(std::abs(zs.zeros[i]) > 0.5);
    CHECK(std::abs(zs.zeros[i]) < 1.0);
  }
}

TEST_CASE("automatic seeds form a fan satisfying the constraint exactly") {
  const auto zs = ring::make_zero_set(3, -2, 0.4, {});
  CHECK(zs.zeros.size() == 5);
  CHECK(zs.constraint_residual < 1e-14);
  const double m = std::pow(0.4, 2.0 / 5.0);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(zs.zeros[i]) == doctest::Approx(m).epsilon(1e-14));
  }
}

TEST_CASE("zero set rejections") {
  CHECK_THROWS_AS(ring::make_zero_set(0, -1, 0.5, {}), ring::DomainError);
  CHECK_THROWS_AS(ring::make_zero_set(1, 0, 0.5, {}), ring::DomainError);
  CHECK_THROWS_AS(ring::make_zero_set(-1, -1, 0.5, {}), ring::DomainError);
  CHECK_THROWS_AS(ring::make_zero_set(1, -1, 0.5, {cplx(0.7, 0.0)}), ring::DomainError);

  // a seed sitting outside the open annulus, reported by index
  try {
    ring::make_zero_set(1, -1, 0.5, {cplx(0.7, 0.0), cplx(0.4, 0.0)});
    CHECK(false);
  } catch (const ring::DomainError& e) {
    CHECK(std::string(e.what()).find("seed 1") != std::string::npos);
  }

  // feasible seeds whose projection would cross the inner circle: the seed
  // at 0.51 carries more than half the log mass, so scaling to q = -2 pushes
  // it below rho
  try {
    ring::make_zero_set(1, -2, 0.5, {cplx(0.51, 0.0), std::polar(0.98, 1.0), cplx(0.98, 0.0)});
    CHECK(false);
  } catch (const ring::DomainError& e) {
    CHECK(std::string(e.what()).find("seed 0") != std::string::npos);
  }
}

TEST_CASE("zero set json round trip") {
  const auto zs = ring::make_zero_set(2, -1, 0.4, {});
  const auto j = ring::zero_set_to_json(zs);
  CHECK(j.at("zeros").size() == 3);
  CHECK(j.at("zeros")[0].contains("re"));
  CHECK(j.at("zeros")[0].contains("im"));
  const auto back = ring::zero_set_from_json(j);
  CHECK(back.p == 2);
  CHECK(back.q == -1);
  CHECK(back.zeros.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(std::abs(back.zeros[i] - zs.zeros[i]) < 1e-14);
}

TEST_CASE("annulus factor vanishes at its zero and avoids poles") {
  const double rho = 0.5, eps = 1e-12;
  const cplx x = std::polar(0.7, 0.9);
  CHECK(std::abs(ring::f_factor(x, x, rho, eps)) < 1e-14);
  CHECK_THROWS_AS(ring::f_factor(cplx(0.3, 0.0), cplx(0.7, 0.0), rho, eps), ring::DomainError);
  // pole at 1/conj(x) and its first inward reflection rho^2/conj(x)
  CHECK_THROWS_AS(ring::f_factor(cplx(0.8, 0.0), cplx(1.25, 0.0), rho, eps), ring::DomainError);
  CHECK_THROWS_AS(ring::f_factor(cplx(0.8, 0.0), cplx(0.3125, 0.0), rho, eps), ring::DomainError);
  CHECK_THROWS_AS(ring::f_factor(x, cplx(0.0, 0.0), rho, eps), ring::DomainError);
}

TEST_CASE("reflection identities of the annulus factor") {
  const double rho = 0.5, eps = 1e-12;
  const cplx x = std::polar(0.63, 1.7);
  const cplx xb = std::conj(x);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * pi);
  for (int k = 0; k < 50; ++k) {
    const cplx z1 = std::polar(1.0, ua(rng));
    const cplx lhs1 = ring::f_factor(x, z1, rho, eps) * ring::f_factor(xb, 1.0 / z1, rho, eps) *
                      std::norm(x);
    CHECK(std::abs(lhs1 - 1.0) < 1e-10);

    const cplx zr = std::polar(rho, ua(rng));
    const cplx lhs2 =
        ring::f_factor(x, zr, rho, eps) * ring::f_factor(xb, rho * rho / zr, rho, eps);
    CHECK(std::abs(lhs2 - 1.0) < 1e-10);
  }
}

TEST_CASE("factor conjugation symmetry") {
  const double rho = 0.4, eps = 1e-12;
  const cplx x = std::polar(0.55, 0.4);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> ur(0.4, 1.0), ua(0.0, 2.0 * pi);
  for (int k = 0; k < 30; ++k) {
    const cplx z = std::polar(ur(rng), ua(rng));
    const cplx a = std::conj(ring::f_factor(x, z, rho, eps));
    const cplx b = ring::f_factor(std::conj(x), std::conj(z), rho, eps);
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("product solution is unimodular on both circles and vanishes at its zeros") {
  const double rho = 0.5, eps = 1e-12;
  const auto zs = ring::make_zero_set(1, -1, rho, {});
  const auto u = ring::build_solution(zs, eps);
  for (int j = 0; j < 128; ++j) {
    const double t = 2.0 * pi * j / 128;
    CHECK(std::abs(std::abs(u.at(1.0, t).u) - 1.0) < 1e-11);
    CHECK(std::abs(std::abs(u.at(rho, t).u) - 1.0) < 1e-11);
  }
  for (cplx x : zs.zeros) CHECK(std::abs(u.value(x)) < 1e-14);
}

TEST_CASE("truncation error on the boundary decays geometrically like rho^2") {
  const double rho = 0.5;
  // irregular angles: a symmetric fan would cancel the leading tail term
  // (the zeros' inverse-power sums vanish) and mask the decay being tested
  const double m3 = std::pow(rho, 1.0 / 3.0);
  const auto zs = ring::make_zero_set(
      2, -1, rho, {std::polar(m3, 0.0), std::polar(m3, 0.9), std::polar(m3, 2.0)});
  auto boundary_dev = [&](double eps) {
    const ring::ProductSolution u(zs, eps);
    double dev = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double t = 2.0 * pi * j / 64;
      dev = std::max(dev, std::abs(std::abs(u.at(1.0, t).u) - 1.0));
      dev = std::max(dev, std::abs(std::abs(u.at(rho, t).u) - 1.0));
    }
    return dev;
  };
  // eps values chosen to land on consecutive truncation orders K
  double prev = -1.0;
  int prev_K = 0;
  for (int m = 1; m <= 4; ++m) {
    const double eps = 0.99 * std::pow(rho, 2.0 * m) / (1.0 - rho * rho);
    const ring::ProductSolution u(zs, eps);
    if (m > 1) CHECK(u.truncation_order() == prev_K + 1);
    prev_K = u.truncation_order();
    const double dev = boundary_dev(eps);
    if (prev > 0.0) CHECK(dev < 0.5 * prev); // geometric with ratio ~rho^2 = 0.25
    prev = dev;
  }
}

TEST_CASE("validated product solutions hit their targets") {
  const double eps = 1e-12;
  {
    const auto zs = ring::make_zero_set(1, -1, 0.5, {});
    const auto u = ring::build_solution(zs, eps);
    const auto rep = ring::validate_solution(u, ring::AnnulusGrid(0.5, 301, 256));
    CHECK(rep.boundary_modulus_deviation < 1e-10);
    CHECK(rep.degree_outer == 1);
    CHECK(rep.degree_inner == -1);
    CHECK(rep.zero_count == 2);
    CHECK(rep.energy_expected == doctest::Approx(2.0 * pi));
    CHECK(rep.energy == doctest::Approx(2.0 * pi).epsilon(1e-4));
    CHECK(std::abs(rep.hopf.c_estimate) < 1e-6);
  }
  {
    const auto zs = ring::make_zero_set(2, -1, 0.3, {});
    const auto u = ring::build_solution(zs, eps);
    const auto rep = ring::validate_solution(u, ring::AnnulusGrid(0.3, 301, 256));
    CHECK(rep.degree_outer == 2);
    CHECK(rep.degree_inner == -1);
    CHECK(rep.zero_count == 3);
    CHECK(rep.energy == doctest::Approx(3.0 * pi).epsilon(1e-4));
  }
}

TEST_CASE("argument principle counts enclosed zeros") {
  const auto f = shifted_identity(cplx(0.6, 0.0));
  CHECK(ring::argument_principle_count(f, 0.3, 0.9, 256) == 1);
  CHECK(ring::argument_principle_count(f, 0.65, 0.9, 256) == 0);

  const auto u11 = ring::build_solution(ring::make_zero_set(1, -1, 0.5, {}), 1e-12);
  CHECK(ring::argument_principle_count(u11, 0.5, 1.0, 512) == 2);

  const auto u32 = ring::build_solution(ring::make_zero_set(3, -2, 0.5, {}), 1e-12);
  CHECK(ring::argument_principle_count(u32, 0.5, 1.0, 1024) == 5);
}

TEST_CASE("argument principle retries off a zero-crossing contour") {
  // outer contour passes exactly through the zero at angle 0
  const auto f = shifted_identity(cplx(0.6, 0.0));
  const int n = ring::argument_principle_count(f, 0.3, 0.6, 256);
  CHECK((n == 0 || n == 1));

  const TestField tiny(
      [](double, double) -> ring::FieldSample { return {cplx(1e-14, 0.0), 0.0, 0.0}; });
  CHECK_THROWS_AS(ring::argument_principle_count(tiny, 0.3, 0.9, 64), ring::NumericalError);
}

TEST_CASE("product solutions refuse invalid degree pairs and broken constraints") {
  ring::ZeroSet bad;
  bad.rho = 0.5;
  bad.p = 1;
  bad.q = -1;
  bad.zeros = {cplx(0.9, 0.0), cplx(0.9, 0.0)}; // violates the modulus constraint
  CHECK_THROWS_AS(ring::ProductSolution(bad, 1e-12), ring::DomainError);
  bad.q = 1;
  CHECK_THROWS_AS(ring::ProductSolution(bad, 1e-12), ring::DomainError);
}

TEST_CASE("unimodular-boundary maps integrate to pi times the degree difference") {
  const auto u = ring::build_solution(ring::make_zero_set(1, -1, 0.5, {}), 1e-12);
  const double val = ring::degree_difference_integral(u, ring::AnnulusGrid(0.5, 301, 128));
  CHECK(val == doctest::Approx(2.0 * pi).epsilon(1e-4));
}
