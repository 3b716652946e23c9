#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "abscat/errors.hpp"
#include "abscat/oracle.hpp"
#include "abscat/phase_shift.hpp"
#include "abscat/special_fn.hpp"

using namespace abscat;
using std::numbers::pi;

namespace {

// Leading significant digits of a scientific-notation string.
std::string mantissa(const std::string& s, int digits) {
  std::string out;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') out += c;
    if (static_cast<int>(out.size()) == digits) break;
  }
  return out;
}

double max_error(const RadialSolution& sol, double (*exact)(double)) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    worst = std::max(worst, std::abs(sol.u[i] - exact(sol.r[i])));
  }
  return worst;
}

double sin_shifted(double r) { return std::sin(r - 1.0); }

}  // namespace

TEST_CASE("extended-precision reference values") {
  // x is the double nearest pi/2, so the target is sqrt(2/(pi x)) sin x there.
  const BesselReference half = bessel_reference(0.5, pi / 2, 30);
  CHECK(mantissa(half.j, 30) == "636619772367581355483801376831");
  CHECK(half.j_value == doctest::Approx(2.0 / pi).epsilon(1e-15));

  const BesselReference j30 = bessel_reference(0.0, 1.0, 30);
  const BesselReference j40 = bessel_reference(0.0, 1.0, 40);
  CHECK(mantissa(j30.j, 30) == "765197686557966551449717526103");
  CHECK(mantissa(j40.j, 40) == "7651976865579665514497175261026632209093");
  // The two precisions agree up to rounding of the last kept digit.
  CHECK(mantissa(j40.j, 29) == mantissa(j30.j, 29));

  // 3.2 here is the double 3.20000000000000017763568394002504646778.
  const BesselReference r = bessel_reference(1.75, 3.2, 30);
  CHECK(mantissa(r.j, 25) == "4750285922387302070405491");
  CHECK(mantissa(r.y, 25) == "4440545114633819470893862");

  const BesselReference y1 = bessel_reference(1.0, 2.5, 25);
  CHECK(mantissa(y1.j, 25) == "4970941024642740380108163");
  CHECK(mantissa(y1.y, 25) == "1459181379667857988787599");
}

TEST_CASE("integer order is the limit of the connection formula") {
  const BesselReference exact = bessel_reference(1.0, 2.5, 25);
  const BesselReference near = bessel_reference(1.0 + 1e-12, 2.5, 25);
  CHECK(mantissa(exact.y, 10) == mantissa(near.y, 10));
  CHECK(mantissa(exact.j, 10) == mantissa(near.j, 10));
}

TEST_CASE("reference domain") {
  CHECK_THROWS_AS(bessel_reference(41.0, 1.0, 30), UnsupportedRange);
  CHECK_THROWS_AS(bessel_reference(1.0, 101.0, 30), UnsupportedRange);
  CHECK_THROWS_AS(bessel_reference(1.0, 0.0, 30), UnsupportedRange);
  CHECK_THROWS_AS(bessel_reference(1.0, 1.0, 10), UnsupportedRange);
}

TEST_CASE("free radial equation at nu = 1/2") {
  const BoundaryCondition d = BoundaryCondition::dirichlet();
  const RadialSolution sol = integrate_radial(0.5, 1.0, 1.0, d, 50.0, 49 * 400);
  for (std::size_t i = 0; i < sol.r.size(); ++i) {
    if (std::abs(sol.r[i] - 10.0) < 0.5 * sol.h) {
      CHECK(std::abs(sol.u[i] - std::sin(9.0)) < 1e-8);
    }
  }
  CHECK(max_error(sol, sin_shifted) < 1e-8);

  // Robin lambda = 1: psi(a) = 1, psi'(a) = 3/2.
  const RadialSolution rob =
      integrate_radial(0.5, 1.0, 1.0, BoundaryCondition::robin(1.0), 50.0, 49 * 400);
  double worst = 0.0;
  for (std::size_t i = 0; i < rob.r.size(); ++i) {
    const double t = rob.r[i] - 1.0;
    worst = std::max(worst, std::abs(rob.u[i] - (std::cos(t) + 1.5 * std::sin(t))));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("integrator order") {
  const BoundaryCondition d = BoundaryCondition::dirichlet();
  const std::size_t n = 49 * 4;  // about 25 points per wavelength
  const double coarse = max_error(integrate_radial(0.5, 1.0, 1.0, d, 50.0, n), sin_shifted);
  const double fine = max_error(integrate_radial(0.5, 1.0, 1.0, d, 50.0, 2 * n), sin_shifted);
  MESSAGE("observed order " << std::log2(coarse / fine));
  CHECK(std::log2(coarse / fine) >= 3.9);
}

TEST_CASE("discrete Wronskian is conserved") {
  const double nu = 2.3, k = 1.7, a = 1.0, r_max = 40.0;
  const std::size_t n = recommended_steps(nu, k, a, r_max);
  const RadialSolution d = integrate_radial(nu, k, a, BoundaryCondition::dirichlet(), r_max, n);
  const RadialSolution m = integrate_radial(nu, k, a, BoundaryCondition::neumann(), r_max, n);
  const double w0 = numerov_wronskian(d, m, 1);
  for (std::size_t i = 2; i + 1 < d.u.size(); i += 97) {
    CHECK(std::abs(numerov_wronskian(d, m, i) - w0) <= 1e-10 * std::abs(w0));
  }
}

TEST_CASE("integration errors") {
  const BoundaryCondition d = BoundaryCondition::dirichlet();
  CHECK_THROWS_AS(integrate_radial(0.5, 1.0, 1.0, d, 30.0, 10000), DomainError);
  CHECK_THROWS_AS(integrate_radial(0.5, 1.0, 1.0, d, 50.0, 49 / 5 * 10), ResolutionError);
  CHECK_NOTHROW(integrate_radial(0.5, 1.0, 1.0, d, 50.0, 49 * 4));
}

TEST_CASE("phase extraction") {
  SUBCASE("Dirichlet at nu = 1/2") {
    const SectorParams s(0, 0.5, 1.0, BoundaryCondition::dirichlet());
    const ExtractedPhase e = ode_phase_shift(s, 1.0);
    CHECK(distance_mod_pi(e.delta, -1.0 - pi / 4) < 1e-6);
    CHECK(distance_mod_pi(e.delta, phase_shift(s, 1.0)) < 1e-6);
    CHECK(e.residual_rms < 1e-6 * e.amplitude);
  }
  SUBCASE("Neumann at the first J_1 zero") {
    double lo = 3.5, hi = 4.0;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (bessel_quad(1.0, mid).j > 0.0 ? lo : hi) = mid;
    }
    const SectorParams s(0, 0.0, 1.0, BoundaryCondition::neumann());
    CHECK(distance_mod_pi(ode_phase_shift(s, lo).delta, 0.0) < 1e-6);
  }
  SUBCASE("scale invariance") {
    const double nu = 1.3, k = 2.0, a = 1.0, r_max = 40.0;
    const std::size_t n = recommended_steps(nu, k, a, r_max);
    const BoundaryCondition bc = BoundaryCondition::robin(0.7);
    const ExtractedPhase one = extract_phase_shift(integrate_radial(nu, k, a, bc, r_max, n, 1.0), 1, 0.3);
    const ExtractedPhase big = extract_phase_shift(integrate_radial(nu, k, a, bc, r_max, n, 7.25), 1, 0.3);
    CHECK(std::abs(one.delta - big.delta) < 1e-12);
  }
  SUBCASE("poor fit is rejected") {
    RadialSolution sol = integrate_radial(0.5, 1.0, 1.0, BoundaryCondition::dirichlet(), 50.0, 4000);
    for (std::size_t i = 0; i < sol.u.size(); i += 2) sol.u[i] = -sol.u[i];
    CHECK_THROWS_AS(extract_phase_shift(sol, 0, 0.5), FitQualityError);
  }
}

TEST_CASE("angle reduction") {
  CHECK(reduce_mod_pi(-0.1) == doctest::Approx(pi - 0.1));
  CHECK(reduce_mod_pi(3.0 * pi + 0.2) == doctest::Approx(0.2));
  CHECK(distance_mod_pi(0.01, pi - 0.01) == doctest::Approx(0.02));
}

TEST_CASE("spectral reconstruction of a bump") {
  const TestFunction bump = bump_function(2.5, 1.0);
  const double exact = bump.f(2.5);
  for (double lambda : {0.0, 1.0}) {
    const double rec = completeness_check(bump, 0.5, BoundaryCondition::robin(lambda), 1.0, 2.5, 60.0);
    CAPTURE(lambda);
    CHECK(std::abs(rec - exact) <= 1e-3 * exact);
  }
  const double rec0 = completeness_check(bump, 0.0, BoundaryCondition::robin(1.0), 1.0, 2.5, 60.0);
  CHECK(std::abs(rec0 - exact) <= 1e-2 * exact);

  const TestFunction away = bump_function(5.0, 1.0);
  const double outside = completeness_check(away, 0.5, BoundaryCondition::robin(1.0), 1.0, 2.5, 60.0);
  CHECK(std::abs(outside) <= 1e-3 * std::exp(-1.0));
}

TEST_CASE("reconstruction error shrinks with the cutoff") {
  const TestFunction bump = bump_function(2.5, 1.0);
  const double exact = bump.f(2.5);
  double previous = std::numeric_limits<double>::infinity();
  for (double k_max : {20.0, 40.0, 60.0}) {
    const double err = std::abs(
        completeness_check(bump, 0.5, BoundaryCondition::robin(1.0), 1.0, 2.5, k_max) - exact);
    MESSAGE("k_max " << k_max << " error " << err);
    CHECK(err <= 1.1 * previous);
    previous = err;
  }
}
