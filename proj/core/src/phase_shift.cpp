#include "abscat/phase_shift.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "abscat/errors.hpp"
#include "abscat/special_fn.hpp"

namespace abscat {
namespace {

constexpr double kPi = std::numbers::pi;

void check_wavenumber(double k) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw DomainError("wavenumber k must be positive and finite");
  }
}

void check_flux(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("flux alpha must lie in [0, 1)");
  }
}

struct Combination {
  double j_comb;
  double n_comb;
};

Combination combine(const BesselQuad& q, const MixingWeights& w) {
  return {w.value * q.j + w.slope * q.jp, w.value * q.y + w.slope * q.yp};
}

}  // namespace

BoundaryCondition BoundaryCondition::dirichlet() noexcept {
  return BoundaryCondition(BoundaryKind::dirichlet, 0.0);
}

BoundaryCondition BoundaryCondition::neumann() noexcept {
  return BoundaryCondition(BoundaryKind::neumann,
                           std::numeric_limits<double>::infinity());
}

BoundaryCondition BoundaryCondition::robin(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0) {
    throw UnsupportedRange("Robin parameter must be non-negative");
  }
  if (std::isinf(lambda)) return neumann();
  return BoundaryCondition(BoundaryKind::robin, lambda);
}

std::string BoundaryCondition::label() const {
  switch (kind_) {
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::neumann: return "neumann";
    case BoundaryKind::robin: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << "robin:" << lambda_;
  return os.str();
}

MixingWeights mixing_weights(const BoundaryCondition& bc, double k) {
  if (bc.is_neumann()) return {0.0, -1.0};
  // Dirichlet carries lambda = 0 and goes through the same expression, so a
  // Robin condition with lambda = 0 yields bit-identical weights.
  return {1.0, 0.0 - bc.lambda() * k};
}

SectorParams::SectorParams(int m, double alpha, double a, BoundaryCondition bc)
    : m_(m), alpha_(alpha), a_(a), bc_(bc) {
  check_flux(alpha);
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("solenoid radius must be positive and finite");
  }
}

double SectorParams::nu() const noexcept { return std::abs(m_ + alpha_); }

double SectorParams::beta() const noexcept {
  return kPi * (std::abs(m_) - nu());
}

double delta_m(int m, double alpha) {
  check_flux(alpha);
  return detail::delta_any_flux(m, alpha);
}

BoundaryPhase boundary_phase(const SectorParams& sector, double k) {
  check_wavenumber(k);
  const BesselQuad q = bessel_quad(sector.nu(), k * sector.a());
  const Combination c = combine(q, mixing_weights(sector.bc(), k));
  const double norm = std::hypot(c.j_comb, c.n_comb);
  if (!(norm > 0.0)) {
    throw KernelFailure("boundary combinations vanish together (contradicts "
                        "the Wronskian)");
  }
  return {c.j_comb, c.n_comb, norm, std::atan2(c.j_comb, c.n_comb)};
}

double theta_lambda(const SectorParams& sector, double k) {
  return boundary_phase(sector, k).theta;
}

double phase_shift(const SectorParams& sector, double k) {
  return delta_m(sector.m(), sector.alpha()) + theta_lambda(sector, k);
}

std::complex<double> s_matrix(const SectorParams& sector, double k) {
  check_wavenumber(k);
  const BesselQuad q = bessel_quad(sector.nu(), k * sector.a());
  const HankelValue h = hankel1(q);
  const MixingWeights w = mixing_weights(sector.bc(), k);
  const std::complex<double> h1c = w.value * h.h + w.slope * h.hp;
  const double mod = std::abs(h1c);
  if (!(mod >= 1e-300) || !std::isfinite(mod)) {
    throw KernelFailure("s_matrix: degenerate Hankel combination");
  }
  // H2c = conj(H1c) for real order and argument; normalise before squaring
  // so huge Y values cannot overflow.
  const std::complex<double> unit = h1c / mod;
  return -s_matrix_zero_radius(sector.m(), sector.alpha()) *
         std::conj(unit) * std::conj(unit);
}

std::complex<double> s_matrix_zero_radius(int m, double alpha) {
  return std::polar(1.0, 2.0 * delta_m(m, alpha));
}

BoundaryCondition map_tilde_lambda(double tilde, double a) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("solenoid radius must be positive and finite");
  }
  if (std::isnan(tilde)) throw DomainError("tilde lambda is NaN");
  if (std::isinf(tilde)) {
    throw UnsupportedRange("tilde lambda = infinity maps to lambda = -2a < 0");
  }
  const double denom = 2.0 * a - tilde;
  if (denom == 0.0) return BoundaryCondition::neumann();
  const double lambda = 2.0 * a * tilde / denom;
  if (lambda < 0.0) {
    throw UnsupportedRange("tilde lambda maps to a negative Robin parameter");
  }
  return BoundaryCondition::robin(lambda);
}

namespace detail {

double delta_any_flux(int m, double alpha) noexcept {
  return 0.5 * kPi * (std::abs(m) - std::abs(m + alpha));
}

std::complex<double> radius_ratio(double nu, double k, double a,
                                  const BoundaryCondition& bc) {
  const BesselQuad q = bessel_quad(nu, k * a);
  const Combination c = combine(q, mixing_weights(bc, k));
  // J_c / (J_c + i N_c), scaled so a huge N_c cannot overflow the modulus.
  const double scale = std::max(std::abs(c.j_comb), std::abs(c.n_comb));
  if (!(scale > 0.0)) {
    throw KernelFailure("radius_ratio: boundary combinations vanish together");
  }
  const std::complex<double> den(c.j_comb / scale, c.n_comb / scale);
  return (c.j_comb / scale) / den;
}

}  // namespace detail

}  // namespace abscat
