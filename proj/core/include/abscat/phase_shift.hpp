#pragma once

#include <complex>
#include <string>

namespace abscat {

enum class BoundaryKind { dirichlet, neumann, robin };

/// One of the self-adjoint boundary conditions on the solenoid border:
/// phi(a) = lambda * phi'(a) with lambda >= 0 (Robin), lambda = 0 (Dirichlet)
/// or lambda = infinity (Neumann). Neumann is a separate branch and is never
/// stored as a large finite lambda.
class BoundaryCondition {
 public:
  static BoundaryCondition dirichlet() noexcept;
  static BoundaryCondition neumann() noexcept;
  /// Throws UnsupportedRange for negative or NaN lambda; +infinity maps to
  /// the Neumann branch.
  static BoundaryCondition robin(double lambda);

  BoundaryKind kind() const noexcept { return kind_; }
  /// 0 for Dirichlet, +infinity for Neumann.
  double lambda() const noexcept { return lambda_; }
  bool is_neumann() const noexcept { return kind_ == BoundaryKind::neumann; }

  /// "dirichlet", "neumann" or "robin:<lambda>".
  std::string label() const;

  friend bool operator==(const BoundaryCondition&,
                         const BoundaryCondition&) = default;

 private:
  BoundaryCondition(BoundaryKind kind, double lambda) noexcept
      : kind_(kind), lambda_(lambda) {}

  BoundaryKind kind_ = BoundaryKind::dirichlet;
  double lambda_ = 0.0;
};

/// Coefficients of the boundary combination value * F(ka) + slope * F'(ka),
/// where F' is the derivative with respect to the argument x = ka. The Robin
/// condition involves d/dr = k d/dx, hence slope = -lambda * k. Neumann keeps
/// only the derivative, oriented like the lambda -> infinity limit.
struct MixingWeights {
  double value;
  double slope;
};

MixingWeights mixing_weights(const BoundaryCondition& bc, double k);

/// One angular momentum channel: integer m, flux alpha in [0, 1), solenoid
/// radius a > 0 and the boundary condition.
class SectorParams {
 public:
  /// Throws DomainError when alpha is outside [0, 1) or a <= 0.
  SectorParams(int m, double alpha, double a, BoundaryCondition bc);

  int m() const noexcept { return m_; }
  double alpha() const noexcept { return alpha_; }
  double a() const noexcept { return a_; }
  const BoundaryCondition& bc() const noexcept { return bc_; }

  /// Bessel order |m + alpha|.
  double nu() const noexcept;
  /// pi (|m| - |m + alpha|), twice the zero-radius phase shift.
  double beta() const noexcept;

 private:
  int m_;
  double alpha_;
  double a_;
  BoundaryCondition bc_;
};

/// Zero-radius phase shift (pi/2)(|m| - |m + alpha|); alpha must lie in [0, 1).
double delta_m(int m, double alpha);

/// Boundary combinations at x = ka and the angle they define.
struct BoundaryPhase {
  double j_comb;  // combination of J_nu and J'_nu
  double n_comb;  // combination of Y_nu and Y'_nu
  double norm;    // D = hypot(j_comb, n_comb), never zero
  double theta;   // atan2(j_comb, n_comb) in (-pi, pi]
};

BoundaryPhase boundary_phase(const SectorParams& sector, double k);

/// theta_lambda with cos = n_comb / D and sin = j_comb / D.
double theta_lambda(const SectorParams& sector, double k);

/// Raw phase shift delta_m(alpha) + theta_lambda; not reduced modulo pi.
double phase_shift(const SectorParams& sector, double k);

/// S = -e^{2i Delta} (H2c / H1c) with Hc the boundary combination of the
/// Hankel function. |S| = 1 up to rounding.
std::complex<double> s_matrix(const SectorParams& sector, double k);

/// e^{2i Delta_m(alpha)}: e^{-i pi alpha} for m >= -alpha, e^{i pi alpha}
/// otherwise.
std::complex<double> s_matrix_zero_radius(int m, double alpha);

/// Maps the Robin parameter of the substituted problem psi(a) = t psi'(a) to
/// lambda = 2 a t / (2 a - t). t = 2a gives Neumann; t = +/-infinity gives
/// lambda = -2a, which is rejected like every negative lambda with
/// UnsupportedRange.
BoundaryCondition map_tilde_lambda(double tilde, double a);

namespace detail {

/// Delta_m(alpha) for any real alpha (used by the flux-shift checks).
double delta_any_flux(int m, double alpha) noexcept;

/// J_comb / (J_comb + i N_comb) at order nu, the radius-correction factor of
/// one partial wave.
std::complex<double> radius_ratio(double nu, double k, double a,
                                  const BoundaryCondition& bc);

}  // namespace detail

}  // namespace abscat
