#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ring/errors.hpp"
#include "ring/grid.hpp"
#include "ring/hopf.hpp"
#include "ring/quadrature.hpp"
#include "ring/radial.hpp"

using ring::cplx;
using ring::pi;
using ring::RadialKind;

TEST_CASE("closed-form energies") {
  CHECK(ring::radial_energy(1, 0.5, RadialKind::catenoidal) ==
        doctest::Approx(2.0 * pi / 3.0).epsilon(1e-14));
  CHECK(ring::radial_energy(1, 1e-9, RadialKind::helicoidal) ==
        doctest::Approx(2.0 * pi).epsilon(1e-8));
  CHECK(ring::radial_energy(3, 0.4, RadialKind::catenoidal) ==
        doctest::Approx(6.0 * pi * (1.0 - 0.064) / (1.0 + 0.064)).epsilon(1e-14));
  // the closed form only sees |p|
  CHECK(ring::radial_energy(-2, 0.5, RadialKind::catenoidal) ==
        ring::radial_energy(2, 0.5, RadialKind::catenoidal));
  CHECK_THROWS_AS(ring::radial_energy(0, 0.5, RadialKind::catenoidal), ring::DomainError);
  CHECK_THROWS_AS(ring::radial_energy(1, 0.0, RadialKind::catenoidal), ring::DomainError);
}

TEST_CASE("closed-form energy agrees with quadrature") {
  const ring::AnnulusGrid g(0.4, 401, 32);
  const ring::RadialSolution u(3, 0.4, RadialKind::catenoidal);
  CHECK(ring::dirichlet_energy(u, g) ==
        doctest::Approx(ring::radial_energy(3, 0.4, RadialKind::catenoidal)).epsilon(1e-8));
  const ring::RadialSolution v(2, 0.4, RadialKind::helicoidal);
  CHECK(ring::dirichlet_energy(v, g) ==
        doctest::Approx(ring::radial_energy(2, 0.4, RadialKind::helicoidal)).epsilon(1e-8));
}

TEST_CASE("sign-split family always costs more") {
  for (int p = 1; p <= 6; ++p)
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9})
      CHECK(ring::radial_energy(p, rho, RadialKind::helicoidal) >
            ring::radial_energy(p, rho, RadialKind::catenoidal));
}

TEST_CASE("solutions are unimodular on both boundary circles") {
  for (auto kind : {RadialKind::catenoidal, RadialKind::helicoidal}) {
    for (int p : {1, 2, 5, -3}) {
      const ring::RadialSolution u(p, 0.37, kind, std::polar(1.0, 0.8));
      for (double r : {0.37, 1.0})
        for (int j = 0; j < 8; ++j)
          CHECK(std::abs(std::abs(u.at(r, j * 0.7).u) - 1.0) < 1e-14);
    }
  }
  CHECK_THROWS_AS(ring::RadialSolution(0, 0.5, RadialKind::catenoidal), ring::DomainError);
  CHECK_THROWS_AS(ring::RadialSolution(1, 0.5, RadialKind::catenoidal, cplx(0.5, 0.0)),
                  ring::DomainError);
}

TEST_CASE("quadratic-differential constants match the grid estimate") {
  const ring::AnnulusGrid g(0.5, 51, 16);
  for (auto kind : {RadialKind::catenoidal, RadialKind::helicoidal}) {
    for (int p : {1, 2, 3}) {
      const ring::RadialSolution u(p, 0.5, kind);
      const auto rep = ring::hopf_constant_check(u, g);
      CHECK(rep.c_estimate ==
            doctest::Approx(ring::radial_hopf_constant(p, 0.5, kind)).epsilon(1e-12));
      CHECK(rep.max_imag_part < 1e-12);
      CHECK(rep.max_real_deviation < 1e-12);
    }
  }
  CHECK(ring::radial_hopf_constant(2, 0.5, RadialKind::catenoidal) ==
        doctest::Approx(-0.64).epsilon(1e-15));
  CHECK(ring::radial_hopf_constant(2, 0.5, RadialKind::helicoidal) ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("threshold root: exact values and monotonicity") {
  CHECK(std::abs(ring::threshold_rho_prime(2) - (std::sqrt(2.0) - 1.0)) < 1e-11);
  // g_3 factors as (rho+1)^2 (2 rho - 1), so the root is exactly 1/2
  CHECK(std::abs(ring::threshold_rho_prime(3) - 0.5) < 1e-11);
  double prev = 0.0;
  for (int p = 2; p <= 8; ++p) {
    const double t = ring::threshold_rho_prime(p);
    CHECK(t > prev);
    CHECK(t > 0.0);
    CHECK(t < 1.0);
    CHECK(std::abs(ring::radial_energy_gap_indicator(p, t)) < 1e-10);
    prev = t;
  }
  CHECK_THROWS_AS(ring::threshold_rho_prime(1), ring::DomainError);
}

TEST_CASE("gap indicator endpoints") {
  for (int p : {2, 3, 5, 8}) {
    CHECK(ring::radial_energy_gap_indicator(p, 0.0) == doctest::Approx(-1.0));
    CHECK(ring::radial_energy_gap_indicator(p, 1.0) == doctest::Approx(2.0 * (p - 1)));
  }
}

TEST_CASE("one-sided minimality classification") {
  CHECK(ring::minimality_test(2, 0.3) == ring::Minimality::non_minimizing);
  CHECK(ring::minimality_test(2, 0.9) == ring::Minimality::inconclusive);
  const double t5 = ring::threshold_rho_prime(5);
  CHECK(ring::minimality_test(5, 0.5) == (0.5 < t5 ? ring::Minimality::non_minimizing
                                                   : ring::Minimality::inconclusive));
  CHECK_THROWS_AS(ring::minimality_test(1, 0.5), ring::DomainError);
}

TEST_CASE("energy comparison flips across the threshold") {
  // at p = 3 the threshold is exactly 1/2
  auto gap = [](double rho) {
    return ring::radial_energy(3, rho, RadialKind::catenoidal) -
           ring::radial_energy(1, rho, RadialKind::catenoidal) - 2.0 * pi * 2.0;
  };
  CHECK(gap(0.4) > 0.0);
  CHECK(gap(0.6) < 0.0);
}

TEST_CASE("boundary compatibility scan") {
  const ring::AnnulusGrid g(0.5, 11, 64);
  CHECK(ring::steklov_compatibility(2, 2, 1.0, 0.5, g) < 1e-13);
  CHECK(ring::steklov_compatibility(2, 2, -1.0, 0.5, g) < 1e-13);
  CHECK(ring::steklov_compatibility(2, 1, 1.0, 0.5, g) > 1e-2);
  // q = p with a quarter-turn phase: the sup sits on the inner circle at
  // 2 p rho^{p-1} / (1 - rho^{2p})
  const double expected = 2.0 * 2.0 * 0.5 / (1.0 - std::pow(0.5, 4.0));
  CHECK(ring::steklov_compatibility(2, 2, cplx(0.0, 1.0), 0.5, g) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("mid-circle radial derivative: zero for catenoidal, positive for helicoidal") {
  const ring::AnnulusGrid g(0.5, 11, 32);
  CHECK(ring::half_annulus_reduction_check(2, 0.5, g) < 1e-12);
  for (double rho : {0.2, 0.5, 0.8})
    CHECK(ring::half_annulus_reduction_check(1, rho, ring::AnnulusGrid(rho, 11, 32)) < 1e-12);
  const double hel = ring::half_annulus_reduction_check(2, 0.5, g, RadialKind::helicoidal);
  const double expected = 2.0 * 2.0 * std::pow(0.5, 0.5) / (1.0 - 0.25);
  CHECK(hel == doctest::Approx(expected).epsilon(1e-12));
}
