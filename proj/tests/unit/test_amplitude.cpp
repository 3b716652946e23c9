#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "abscat/amplitude.hpp"
#include "abscat/errors.hpp"
#include "abscat/phase_shift.hpp"

using namespace abscat;
using std::numbers::pi;

namespace {

const BoundaryCondition kRobin1 = BoundaryCondition::robin(1.0);

std::vector<BoundaryCondition> trio() {
  return {BoundaryCondition::dirichlet(), BoundaryCondition::neumann(), kRobin1};
}

}  // namespace

TEST_CASE("zero-radius amplitude") {
  CHECK(std::abs(f_zero_radius(1.0, pi, 0.5)) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-14));
  CHECK(f_zero_radius(1.0, pi / 2, 0.0) == std::complex<double>(0.0, 0.0));
  CHECK(std::abs(f_zero_radius(4.0, pi, 0.5)) ==
        doctest::Approx(1.0 / std::sqrt(8.0 * pi)).epsilon(1e-14));
  CHECK(std::abs(std::norm(f_zero_radius(1.0, pi, 0.5)) - 1.0 / (2.0 * pi)) < 1e-12);

  CHECK_THROWS_AS(f_zero_radius(1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(f_zero_radius(1.0, 2.0 * pi, 0.5), DomainError);
  CHECK_THROWS_AS(f_zero_radius(0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(amplitude(1.0, 0.0, 0.5, 1.0, kRobin1), DomainError);
}

TEST_CASE("zero flux amplitude is the radius correction alone") {
  for (const auto& bc : trio()) {
    const std::complex<double> f = amplitude(2.0, 1.1, 0.0, 1.0, bc);
    CHECK(f == f_r_lambda(2.0, 1.1, 0.0, 1.0, bc).value);
  }
}

TEST_CASE("zero flux: sum of (S_m - 1) e^{i m theta}") {
  for (const auto& bc : trio()) {
    for (double k : {0.3, 2.0, 9.0}) {
      const double theta = 2.2;
      const AmplitudeSeries series = f_r_lambda(k, theta, 0.0, 1.0, bc);
      std::complex<double> sum{0.0, 0.0};
      for (int m = -series.m_max; m <= series.m_max; ++m) {
        const std::complex<double> s = s_matrix(SectorParams(m, 0.0, 1.0, bc), k);
        sum += (s - 1.0) * std::polar(1.0, m * theta);
      }
      sum /= std::sqrt(std::complex<double>(0.0, 2.0 * pi * k));
      CHECK(std::abs(sum - series.value) < 1e-12);
    }
  }
}

TEST_CASE("series against high-order summation") {
  const RadiusCorrection high = RadiusCorrection::build_fixed(1.0, 0.5, 1.0, kRobin1, 400);
  const AmplitudeSeries s = f_r_lambda(1.0, pi / 2, 0.5, 1.0, kRobin1);
  CHECK(std::abs(s.value - high.evaluate(pi / 2)) < 1e-10);
  const std::complex<double> frozen(-0.38855759103633877669756, 0.18191608064440593837648);
  CHECK(std::abs(s.value - frozen) < 1e-10);
  CHECK(std::abs(amplitude(1.0, pi / 2, 0.5, 1.0, kRobin1)) ==
        doctest::Approx(0.54507800595324014912).epsilon(1e-10));
}

TEST_CASE("low energy approaches the zero-radius amplitude") {
  for (const auto& bc : trio()) {
    const double ratio =
        std::abs(amplitude(1e-4, pi / 2, 0.5, 1.0, bc)) / std::abs(f_zero_radius(1e-4, pi / 2, 0.5));
    CHECK(std::abs(ratio - 1.0) < 1e-2);
  }
  const double zero = 10.0 / pi;
  CHECK(std::abs(cross_section(0.1, pi / 2, 0.5, 1.0, kRobin1) - zero) < 0.05 * zero);
}

TEST_CASE("regression point at k = 30, theta = pi") {
  const double ds = cross_section(30.0, pi, 0.5, 1.0, BoundaryCondition::robin(0.1));
  CHECK(ds == doctest::Approx(0.49470900698571563690).epsilon(1e-9));
}

TEST_CASE("truncation") {
  for (const auto& bc : trio()) {
    for (double k : {0.05, 1.0, 7.5, 40.0}) {
      for (double alpha : {0.0, 0.3, 0.5}) {
        const double tol = 1e-10;
        const RadiusCorrection rc = RadiusCorrection::build(k, alpha, 1.0, bc, tol);
        CAPTURE(k);
        CAPTURE(alpha);
        CHECK(rc.m_max() >= static_cast<int>(std::ceil(k)) + 10);
        CHECK(rc.tail_bound() <= tol);
        const RadiusCorrection twice =
            RadiusCorrection::build_fixed(k, alpha, 1.0, bc, 2 * rc.m_max());
        for (double theta : {0.3, 1.7, 3.1, 5.0}) {
          CHECK(std::abs(rc.evaluate(theta) - twice.evaluate(theta)) <=
                rc.tail_bound() + 1e-14);
        }
        const double bound = 2.0 / std::sqrt(2.0 * pi * k);
        for (const auto& c : twice.coefficients()) {
          CHECK(std::abs(c) <= bound * (1.0 + 1e-14));
        }
      }
    }
  }
  CHECK_THROWS_AS(RadiusCorrection::build(100.0, 0.5, 1.0, kRobin1, 1e-10, 50),
                  ConvergenceError);
}

TEST_CASE("reflection symmetry for alpha in {0, 1/2}") {
  const double tol = 1e-10;
  for (double alpha : {0.0, 0.5}) {
    for (const auto& bc : trio()) {
      for (double k : {0.1, 1.5, 12.0}) {
        for (double theta : {0.2, 1.0, 2.5}) {
          const double a = cross_section(k, theta, alpha, 1.0, bc, tol);
          const double b = cross_section(k, 2.0 * pi - theta, alpha, 1.0, bc, tol);
          CHECK(std::abs(a - b) <= 2.0 * tol);
        }
      }
    }
  }
}

TEST_CASE("flux shift and periodicity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-10;
  for (int i = 0; i < 10; ++i) {
    const double k = 0.2 + 10.0 * unit(rng);
    const double theta = 0.1 + (2.0 * pi - 0.2) * unit(rng);
    const double alpha = unit(rng);
    const BoundaryCondition bc = BoundaryCondition::robin(3.0 * unit(rng));
    const std::complex<double> f = amplitude(k, theta, alpha, 1.0, bc, tol);
    const std::complex<double> shifted =
        detail::amplitude_any_flux(k, theta, alpha + 1.0, 1.0, bc, tol);
    const std::complex<double> lowered =
        detail::amplitude_any_flux(k, theta, alpha - 1.0, 1.0, bc, tol);
    CHECK(std::abs(std::abs(f) - std::abs(shifted)) <= 2.0 * tol);
    CHECK(std::abs(std::abs(f) - std::abs(lowered)) <= 2.0 * tol);
    // f_alpha = -e^{-i theta} f_{alpha-1}
    CHECK(std::abs(f + std::polar(1.0, -theta) * lowered) <= 2.0 * tol);
    CHECK(std::abs(detail::zero_radius_series(k, theta, alpha) -
                   f_zero_radius(k, theta, alpha)) < 1e-13);
  }
  CHECK(std::abs(cross_section(1.0, pi / 2, 0.5, 1.0, kRobin1, tol) -
                 std::norm(detail::amplitude_any_flux(1.0, pi / 2, 1.5, 1.0, kRobin1, tol))) <=
        2.0 * tol);
}

TEST_CASE("flux canonicalisation") {
  CanonicalFlux c = canonicalize_flux(1.25);
  CHECK(c.alpha == 0.25);
  CHECK(c.n_shift == 1);
  c = canonicalize_flux(-0.5);
  CHECK(c.alpha == 0.5);
  CHECK(c.n_shift == -1);
  c = canonicalize_flux(0.0);
  CHECK(c.alpha == 0.0);
  CHECK(c.n_shift == 0);
  c = canonicalize_flux(-1e-18);
  CHECK(c.alpha >= 0.0);
  CHECK(c.alpha < 1.0);
}

TEST_CASE("cross-section tables") {
  const std::vector<double> ks{0.5, 2.0, 9.0};
  const std::vector<double> thetas{0.01, 1.0, 3.0, 6.0};
  const CrossSectionTable one = cross_section_table(ks, thetas, 0.5, 1.0, kRobin1, 1e-8, 1);
  const CrossSectionTable many = cross_section_table(ks, thetas, 0.5, 1.0, kRobin1, 1e-8, 3);
  REQUIRE(one.rows.size() == 12);
  REQUIRE(many.rows.size() == 12);
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].k == ks[i / 4]);
    CHECK(one.rows[i].theta == thetas[i % 4]);
    CHECK(one.rows[i].dsigma >= 0.0);
    CHECK(one.rows[i].dsigma == many.rows[i].dsigma);
  }
  CHECK(one.metadata.m_max == many.metadata.m_max);
  CHECK(one.metadata.m_max >= 19);
  CHECK(one.metadata.bc == kRobin1);

  const std::vector<double> bad{0.0};
  CHECK_THROWS_AS(cross_section_table(ks, bad, 0.5, 1.0, kRobin1, 1e-8), DomainError);
}
