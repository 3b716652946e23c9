#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "abscat/phase_shift.hpp"

namespace abscat {

/// J_nu(x) and Y_nu(x) from the extended-precision reference, as decimal
/// strings with the requested number of significant digits and as doubles.
struct BesselReference {
  std::string j;
  std::string y;
  double j_value;
  double y_value;
};

/// Ascending power series for J in 160-digit arithmetic; Y from the connection
/// formula (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi) for non-integer nu and
/// from the integer-order series (harmonic numbers and Euler's constant)
/// otherwise. Domain: 0 <= nu <= 40, 0 < x <= 100, 20 <= digits <= 60;
/// anything else throws UnsupportedRange. Each call uses its own
/// multiprecision values; nothing is shared between threads.
BesselReference bessel_reference(double nu, double x, int digits);

/// psi(r) = r^{1/2} phi(r) sampled on a uniform grid r_i = a + i h.
struct RadialSolution {
  double nu = 0.0;
  double k = 0.0;
  double a = 0.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  double h = 0.0;
  std::vector<double> r;
  std::vector<double> u;
};

/// Numerov integration of psi'' = [(nu^2 - 1/4)/r^2 - k^2] psi from r = a to
/// r_max in n_steps steps. Initial data at r = a, times `scale`:
///   Dirichlet psi = 0, psi' = 1
///   Robin     psi = lambda, psi' = 1 + lambda/(2a)   (phi' = a^{-1/2})
///   Neumann   psi = 1, psi' = 1/(2a)
/// The second grid value comes from a sixth-order Taylor step.
/// DomainError if r_max < max(50/k, 20a); ResolutionError if the grid has
/// fewer than 20 points per wavelength 2 pi / k.
RadialSolution integrate_radial(double nu, double k, double a,
                                const BoundaryCondition& bc, double r_max,
                                std::size_t n_steps, double scale = 1.0);

/// Step count giving about 400 points per local wavelength, where the local
/// wavenumber near r = a is max(k, sqrt|nu^2 - 1/4| / a).
std::size_t recommended_steps(double nu, double k, double a, double r_max);

/// Discrete Wronskian phi^A_n phi^B_{n+1} - phi^A_{n+1} phi^B_n with
/// phi_n = (1 - h^2 g_n / 12) psi_n; exactly conserved by the Numerov
/// recurrence for two solutions on the same grid.
double numerov_wronskian(const RadialSolution& first,
                         const RadialSolution& second, std::size_t n);

struct ExtractedPhase {
  double delta;         // theta + Delta_m(alpha), reduced to [0, pi)
  double theta;         // fitted boundary phase, in (-pi, pi]
  double amplitude;     // fitted amplitude A
  double residual_rms;  // RMS of psi - fit over the window
};

/// Least-squares fit of psi over the last quarter of the grid to
///   A [cos(chi + theta) P(kr) - sin(chi + theta) Q(kr)],
///   chi = kr - nu pi/2 - pi/4,
/// with P, Q the Hankel asymptotic series; for kr >> nu^2 this is the pure
/// cosine A cos(chi + theta). Frequency is fixed to k. Requires k r_max >= 50
/// (DomainError); FitQualityError if the residual RMS exceeds 1e-3 A.
ExtractedPhase extract_phase_shift(const RadialSolution& sol, int m,
                                   double alpha);

/// Chooses r_max and the step count, integrates and extracts the phase.
ExtractedPhase ode_phase_shift(const SectorParams& sector, double k);

/// x reduced to [0, pi).
double reduce_mod_pi(double x);

/// Distance between two angles on the circle of circumference pi.
double distance_mod_pi(double x, double y);

/// Smooth test function with support in [lo, hi] on (a, infinity).
struct TestFunction {
  std::function<double(double)> f;
  double lo;
  double hi;
};

/// Truncated spectral reconstruction at r0:
///   int_{k_min}^{k_max} k D(ka, k r0) int D(ka, ks) psi(s) s ds dk / |D|^2,
///   D(ka, y) = N_c J_nu(y) - J_c Y_nu(y),
/// with J_c, N_c the boundary combinations at ka. Both integrals use adaptive
/// Gauss-Kronrod panels; k panels are at most pi / (4 hi) wide.
/// ConvergenceError if a panel misses quad_tol.
double completeness_check(const TestFunction& psi, double nu,
                          const BoundaryCondition& bc, double a, double r0,
                          double k_max, double quad_tol = 1e-9,
                          double k_min = 1e-4);

/// exp(-1/(1 - t^2)), t = (r - center) / half_width, zero for |t| >= 1.
TestFunction bump_function(double center, double half_width);

}  // namespace abscat
