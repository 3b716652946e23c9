#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "abscat/asymptotics.hpp"
#include "abscat/errors.hpp"
#include "abscat/phase_shift.hpp"

using namespace abscat;
using std::numbers::pi;

namespace {

const std::complex<double> kI{0.0, 1.0};

}  // namespace

TEST_CASE("high-energy limits") {
  const double ka = 100.0 * pi;
  CHECK(std::abs(s_high_energy(0, ka, 1.0, BoundaryCondition::dirichlet()) + kI) < 1e-12);
  CHECK(std::abs(s_high_energy(1, ka, 1.0, BoundaryCondition::neumann()) + kI) < 1e-12);
  CHECK(std::abs(s_high_energy(0, ka, 1.0, BoundaryCondition::neumann()) - kI) < 1e-12);
  for (int m : {-3, 0, 4}) {
    CHECK(s_high_energy(m, 7.0, 1.0, BoundaryCondition::robin(1.0)) ==
          s_high_energy(m, 7.0, 1.0, BoundaryCondition::neumann()));
  }
}

TEST_CASE("high-energy agreement at ka = 200") {
  const BoundaryCondition bcs[] = {BoundaryCondition::dirichlet(),
                                   BoundaryCondition::robin(1.0),
                                   BoundaryCondition::neumann()};
  for (const auto& bc : bcs) {
    for (double alpha : {0.0, 0.5}) {
      for (int m : {0, 1, 5}) {
        const SectorParams s(m, alpha, 1.0, bc);
        const double err = std::abs(s_matrix(s, 200.0) - s_high_energy(m, 200.0, 1.0, bc));
        // The leading form drops the Hankel phase (4 nu^2 - 1) / (8 ka).
        const double nu = s.nu();
        const double bound = 0.05 + 2.0 * std::abs(4.0 * nu * nu - 1.0) / (8.0 * 200.0);
        CAPTURE(m);
        CAPTURE(alpha);
        CHECK(err <= (m == 5 ? bound : 0.05));
      }
    }
  }
}

TEST_CASE("low-energy coefficients") {
  const LowEnergyCoeffs d = low_energy_coeffs(0.5, 0.0, 1.0);
  CHECK(d.d1 == doctest::Approx(-1.0 / std::sqrt(pi)).epsilon(1e-12));
  CHECK(d.d2 == doctest::Approx(4.0 / pi).epsilon(1e-12));
  CHECK(d.d3 == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-12));

  CHECK(std::abs(low_energy_coeffs(0.5, 2.0, 1.0).d3) < 1e-15);
  CHECK(std::abs(low_energy_coeffs(1.0, 1.0, 1.0).d2) < 1e-15);
  CHECK_THROWS_AS(low_energy_coeffs(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(low_energy_coeffs(0.5, -1.0, 1.0), DomainError);

  // Neumann coefficients are the large-lambda limit of the Robin ones over lambda.
  const double big = 1e9;
  const LowEnergyCoeffs r = low_energy_coeffs(0.7, big, 1.0);
  const LowEnergyCoeffs n = low_energy_coeffs(0.7, BoundaryCondition::neumann(), 1.0);
  CHECK(r.d1 / big == doctest::Approx(n.d1).epsilon(1e-8));
  CHECK(r.d2 / (big * big) == doctest::Approx(n.d2).epsilon(1e-8));
  CHECK(r.d3 / big == doctest::Approx(n.d3).epsilon(1e-8));
}

TEST_CASE("low-energy expansion, nu > 0") {
  const SectorParams s(0, 0.5, 1.0, BoundaryCondition::robin(1.0));
  CHECK(std::abs(s_low_energy(s, 1e-8) - std::polar(1.0, s.beta())) < 1e-6);

  const BoundaryCondition bcs[] = {BoundaryCondition::dirichlet(),
                                   BoundaryCondition::robin(1.0),
                                   BoundaryCondition::neumann()};
  for (const auto& bc : bcs) {
    for (int m : {-1, 0, 1}) {
      for (double alpha : {0.25, 0.5}) {
        const SectorParams p(m, alpha, 1.0, bc);
        const double ka = 1e-3;
        const std::complex<double> exact = s_matrix(p, ka);
        const std::complex<double> zero = std::polar(1.0, p.beta());
        const LowEnergyCoeffs d = low_energy_coeffs(p.nu(), bc, 1.0);
        const double t = std::pow(ka / 2.0, 2.0 * p.nu());
        const double c = 2.0 * std::abs(d.d3 / d.d1);
        CAPTURE(m);
        CAPTURE(alpha);
        CHECK(std::abs(exact - zero) <= 10.0 * c * t);
        CHECK(std::abs(s_low_energy(p, ka) - exact) <= 0.1 * std::abs(exact - zero));
      }
    }
  }
}

TEST_CASE("low-energy expansion, nu = 0") {
  for (double lambda : {0.0, 1.0}) {
    const SectorParams s(0, 0.0, 1.0, BoundaryCondition::robin(lambda));
    for (double ka : {1e-4, 1e-5, 1e-6}) {
      CAPTURE(lambda);
      CAPTURE(ka);
      CHECK(std::abs(s_low_energy(s, ka) - s_matrix(s, ka)) < 5e-3);
    }
  }
  const SectorParams n(0, 0.0, 1.0, BoundaryCondition::neumann());
  CHECK(std::abs(s_low_energy(n, 1e-4) - s_matrix(n, 1e-4)) < 5e-3);
}

TEST_CASE("low energy does not distinguish the boundary conditions") {
  const double ka = 1e-3;
  const SectorParams d(0, 0.5, 1.0, BoundaryCondition::dirichlet());
  const SectorParams r(0, 0.5, 1.0, BoundaryCondition::robin(1.0));
  const SectorParams n(0, 0.5, 1.0, BoundaryCondition::neumann());
  const std::complex<double> sd = s_matrix(d, ka), sr = s_matrix(r, ka), sn = s_matrix(n, ka);
  CHECK(std::abs(sd - sr) <= 1e-2);
  CHECK(std::abs(sd - sn) <= 1e-2);
  CHECK(std::abs(sr - sn) <= 1e-2);

  for (const SectorParams* p : {&d, &r, &n}) {
    const std::complex<double> zero = std::polar(1.0, p->beta());
    const double e3 = std::abs(s_matrix(*p, 1e-3) - zero);
    const double e4 = std::abs(s_matrix(*p, 1e-4) - zero);
    const double exponent = std::log10(e3 / e4);
    CHECK(std::abs(exponent - 2.0 * p->nu()) <= 0.1 * 2.0 * p->nu());
  }
}
