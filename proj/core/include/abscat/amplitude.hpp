#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "abscat/phase_shift.hpp"

namespace abscat {

inline constexpr double kDefaultLibraryTol = 1e-10;

/// Partial-wave representation of the radius correction f_{r,lambda} at one
/// wavenumber:
///   f_r(theta) = -(2 / (pi i k))^{1/2} sum_m e^{2i Delta_m} J_c/H_c e^{i m theta}
/// truncated to m in [m0 - M, m0 + M], m0 = -floor(alpha) (0 for canonical
/// flux). The coefficients do not depend on theta, so sweeps over angle reuse
/// one instance.
class RadiusCorrection {
 public:
  /// Truncation: M = max(ceil(ka) + 10, smallest M whose estimated tail is
  /// below tol). The cap defaults to 10 ka + 200; exceeding it throws
  /// ConvergenceError. alpha may be any real number here.
  static RadiusCorrection build(double k, double alpha, double a,
                                const BoundaryCondition& bc, double tol,
                                int m_cap = -1);

  /// Builds with a fixed truncation order and no tolerance search.
  static RadiusCorrection build_fixed(double k, double alpha, double a,
                                      const BoundaryCondition& bc, int m_max);

  std::complex<double> evaluate(double theta) const;

  double k() const noexcept { return k_; }
  int m_max() const noexcept { return m_max_; }
  int m_first() const noexcept { return m_first_; }
  double tail_bound() const noexcept { return tail_bound_; }

  /// Full series coefficients (prefactor included) for m = m_first() + i.
  std::span<const std::complex<double>> coefficients() const noexcept {
    return coeffs_;
  }

 private:
  double k_ = 0.0;
  int m_first_ = 0;
  int m_max_ = 0;
  double tail_bound_ = 0.0;
  std::vector<std::complex<double>> coeffs_;
};

/// Value of the truncated radius-correction series at one (k, theta).
struct AmplitudeSeries {
  double k = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  double a = 0.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  int m_max = 0;
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// Zero-radius Aharonov-Bohm amplitude
///   sin(pi alpha) / (2 pi i k)^{1/2} e^{-i theta/2} / sin(theta/2).
/// theta must lie in the open interval (0, 2 pi); the forward direction is a
/// DomainError.
std::complex<double> f_zero_radius(double k, double theta, double alpha);

AmplitudeSeries f_r_lambda(double k, double theta, double alpha, double a,
                           const BoundaryCondition& bc,
                           double tol = kDefaultLibraryTol);

/// f_alpha + f_{r,lambda} for canonical alpha in [0, 1) and theta in (0, 2pi).
std::complex<double> amplitude(double k, double theta, double alpha, double a,
                               const BoundaryCondition& bc,
                               double tol = kDefaultLibraryTol);

/// |amplitude|^2.
double cross_section(double k, double theta, double alpha, double a,
                     const BoundaryCondition& bc,
                     double tol = kDefaultLibraryTol);

struct CanonicalFlux {
  double alpha;  // in [0, 1)
  int n_shift;   // alpha_raw = alpha + n_shift
};

CanonicalFlux canonicalize_flux(double alpha_raw);

/// Rows of (k, theta, dsigma/dtheta) plus the parameters that produced them.
struct CrossSectionTable {
  struct Row {
    double k;
    double theta;
    double dsigma;
  };
  struct Metadata {
    double alpha;
    double a;
    BoundaryCondition bc;
    int m_max;  // largest truncation order used over the grid
    double tolerance;
  };

  std::vector<Row> rows;
  Metadata metadata{0.0, 1.0, BoundaryCondition::dirichlet(), 0, 0.0};
};

/// Evaluates the cross section on the outer product of k_values and
/// theta_values. Rows are ordered k-major in the order given; the result does
/// not depend on the thread count (0 = hardware concurrency).
CrossSectionTable cross_section_table(std::span<const double> k_values,
                                      std::span<const double> theta_values,
                                      double alpha, double a,
                                      const BoundaryCondition& bc, double tol,
                                      unsigned threads = 0);

namespace detail {

/// Zero-radius amplitude for arbitrary real alpha from the Abel-summed
/// partial-wave series; theta in (0, 2 pi).
std::complex<double> zero_radius_series(double k, double theta, double alpha);

/// Full amplitude through the defining partial-wave series with alpha allowed
/// outside [0, 1). Used to exercise the flux-shift identity.
std::complex<double> amplitude_any_flux(double k, double theta, double alpha,
                                        double a, const BoundaryCondition& bc,
                                        double tol);

}  // namespace detail

}  // namespace abscat
