#pragma once

#include <complex>

namespace abscat {

/// Bessel functions of the first and second kind of real order nu >= 0 at a
/// real argument x > 0, together with their derivatives with respect to x.
///
/// The second-kind function is the Weber/Neumann function, written N_nu in
/// much of the scattering literature and Y_nu here.
struct BesselQuad {
  double nu = 0.0;
  double x = 0.0;
  double j = 0.0;
  double y = 0.0;
  double jp = 0.0;
  double yp = 0.0;
};

/// First-kind Hankel function and its derivative, H = J + iY.
struct HankelValue {
  std::complex<double> h;
  std::complex<double> hp;
};

/// Evaluates J_nu(x), Y_nu(x) and their x-derivatives.
///
/// Derivatives follow from the order recurrence
///   F'_nu(x) = -F_{nu+1}(x) + (nu / x) F_nu(x),
/// never from numerical differentiation.
///
/// Throws DomainError for x <= 0, nu < 0 or non-finite input, and
/// OverflowError when Y_nu(x) or Y_{nu+1}(x) is not representable (tiny x with
/// large nu).
BesselQuad bessel_quad(double nu, double x);

/// H^(1) and its derivative built from a quad. H^(2) is the complex conjugate.
HankelValue hankel1(const BesselQuad& q) noexcept;

/// Gamma function for real x > 0 (Lanczos approximation, relative error
/// below 1e-13). Throws DomainError for x <= 0 and OverflowError past ~171.6.
double gamma_fn(double x);

}  // namespace abscat
