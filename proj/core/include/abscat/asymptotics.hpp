#pragma once

#include <complex>

#include "abscat/phase_shift.hpp"

namespace abscat {

/// k-independent coefficients of the ka -> 0 expansion of one sector.
struct LowEnergyCoeffs {
  double d1;
  double d2;
  double d3;
};

/// Leading ka -> infinity form: (-1)^m e^{-2ika - i pi/2} for Dirichlet and
/// (-1)^m e^{-2ika + i pi/2} for every lambda > 0, Neumann included.
/// Intended for ka >= 1; not enforced.
std::complex<double> s_high_energy(int m, double k, double a,
                                   const BoundaryCondition& bc);

/// d1 = -Gamma(nu)/pi - lambda [2 Gamma(nu+1) - nu Gamma(nu)] / (pi a)
/// d2 = (1 - lambda nu / a)^2 / Gamma(nu+1)^2
/// d3 = (1 - lambda nu / a) / Gamma(nu+1)
/// Throws DomainError for nu <= 0 or lambda < 0.
LowEnergyCoeffs low_energy_coeffs(double nu, double lambda, double a);

/// Same coefficients for any boundary condition. Neumann uses the
/// lambda -> infinity limit of d1/lambda, d2/lambda^2, d3/lambda, which
/// leaves the expansion of S unchanged.
LowEnergyCoeffs low_energy_coeffs(double nu, const BoundaryCondition& bc,
                                  double a);

/// Truncated ka -> 0 expansion. For nu > 0 it is
///   e^{i beta} (d1^2 - d2 t^2 + 2i d1 d3 t) / (d1^2 + d2 t^2),
/// t = (ka/2)^{2 nu}; the nu = 0 sector uses the logarithmic expansion in
/// ln(ka). Intended for ka <= 0.1; not enforced.
std::complex<double> s_low_energy(const SectorParams& sector, double k);

}  // namespace abscat
