#include "abscat/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "abscat/errors.hpp"
#include "abscat/special_fn.hpp"

namespace abscat {
namespace {

constexpr double kPi = std::numbers::pi;

void check_inputs(double k, double a) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw DomainError("wavenumber k must be positive and finite");
  }
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("solenoid radius must be positive and finite");
  }
}

struct Quadratic {
  double c0, c1, c2;
};

// m = 0, alpha = 0. Numerator and denominator of the real part and the
// numerator of the imaginary part, as polynomials in lambda. The terms odd in
// 1/ln(ka) carry the sign of the combination N_0 - lambda N_0'.
std::complex<double> s_log_sector(double ka, double a,
                                  const BoundaryCondition& bc) {
  const double L = std::log(ka);
  const double t = 0.25 * ka * ka;
  const double p2 = kPi * kPi;
  const Quadratic re{1.0 - p2 / (4.0 * L * L),
                     -2.0 / (a * L) - p2 * t / (a * L * L),
                     (1.0 - p2 * t * t) / (a * a * L * L)};
  const Quadratic den{1.0 + p2 / (4.0 * L * L),
                      -2.0 / (a * L) + p2 * t / (a * L * L),
                      (1.0 + p2 * t * t) / (a * a * L * L)};
  const Quadratic im{1.0, -1.0 / (a * L) + 2.0 * t / a,
                     -2.0 * t / (a * a * L)};

  if (bc.is_neumann()) {
    return {re.c2 / den.c2, kPi / L * im.c2 / den.c2};
  }
  const double lam = bc.lambda();
  auto eval = [lam](const Quadratic& q) {
    return q.c0 + lam * (q.c1 + lam * q.c2);
  };
  const double d = eval(den);
  return {eval(re) / d, kPi / L * eval(im) / d};
}

}  // namespace

std::complex<double> s_high_energy(int m, double k, double a,
                                   const BoundaryCondition& bc) {
  check_inputs(k, a);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double quarter =
      bc.kind() == BoundaryKind::dirichlet ? -0.5 * kPi : 0.5 * kPi;
  return sign * std::polar(1.0, -2.0 * k * a + quarter);
}

LowEnergyCoeffs low_energy_coeffs(double nu, double lambda, double a) {
  if (!(nu > 0.0)) {
    throw DomainError("low-energy coefficients need nu > 0; the nu = 0 sector "
                      "has a logarithmic expansion");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be finite and non-negative");
  }
  check_inputs(1.0, a);
  const double g = gamma_fn(nu);
  const double g1 = gamma_fn(nu + 1.0);
  const double f = 1.0 - lambda * nu / a;
  return {-g / kPi - lambda * (2.0 * g1 - nu * g) / (kPi * a),
          (1.0 + lambda * lambda * nu * nu / (a * a) - 2.0 * lambda * nu / a) /
              (g1 * g1),
          f / g1};
}

LowEnergyCoeffs low_energy_coeffs(double nu, const BoundaryCondition& bc,
                                  double a) {
  if (!bc.is_neumann()) return low_energy_coeffs(nu, bc.lambda(), a);
  if (!(nu > 0.0)) {
    throw DomainError("low-energy coefficients need nu > 0; the nu = 0 sector "
                      "has a logarithmic expansion");
  }
  check_inputs(1.0, a);
  const double g = gamma_fn(nu);
  const double g1 = gamma_fn(nu + 1.0);
  const double d3 = -nu / (a * g1);
  return {-(2.0 * g1 - nu * g) / (kPi * a), d3 * d3, d3};
}

std::complex<double> s_low_energy(const SectorParams& sector, double k) {
  check_inputs(k, sector.a());
  const double ka = k * sector.a();
  const double nu = sector.nu();
  if (nu == 0.0) return s_log_sector(ka, sector.a(), sector.bc());

  const LowEnergyCoeffs d = low_energy_coeffs(nu, sector.bc(), sector.a());
  const double t = std::pow(0.5 * ka, 2.0 * nu);
  const double den = d.d1 * d.d1 + d.d2 * t * t;
  const double re = (d.d1 * d.d1 - d.d2 * t * t) / den;
  const double im = 2.0 * d.d1 * d.d3 * t / den;
  const double beta = sector.beta();
  return {std::cos(beta) * re - std::sin(beta) * im,
          std::sin(beta) * re + std::cos(beta) * im};
}

}  // namespace abscat
