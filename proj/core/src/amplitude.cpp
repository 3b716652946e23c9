#include "abscat/amplitude.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "abscat/errors.hpp"

namespace abscat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

void check_k(double k) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw DomainError("wavenumber k must be positive and finite");
  }
}

void check_angle(double theta) {
  if (!(theta > 0.0 && theta < 2.0 * kPi)) {
    throw DomainError("scattering angle must lie in (0, 2 pi); the forward "
                      "direction is excluded");
  }
}

void check_radius(double a) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw DomainError("solenoid radius must be positive and finite");
  }
}

void check_canonical_flux(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("flux alpha must lie in [0, 1)");
  }
}

// (2 pi i k)^{1/2} with the principal branch, i^{1/2} = e^{i pi/4}.
std::complex<double> sqrt_2piik(double k) {
  return std::polar(std::sqrt(2.0 * kPi * k), 0.25 * kPi);
}

// One coefficient of the radius-correction series, prefactor included.
std::complex<double> series_term(int m, double alpha, double k, double a,
                                 const BoundaryCondition& bc,
                                 std::complex<double> prefactor) {
  const double nu = std::abs(m + alpha);
  std::complex<double> ratio;
  try {
    ratio = detail::radius_ratio(nu, k, a, bc);
  } catch (const OverflowError&) {
    // Y_nu(ka) beyond the double range means J_c / H_c underflows.
    return {0.0, 0.0};
  }
  return prefactor * std::polar(1.0, 2.0 * detail::delta_any_flux(m, alpha)) *
         ratio;
}

}  // namespace

RadiusCorrection RadiusCorrection::build(double k, double alpha, double a,
                                         const BoundaryCondition& bc,
                                         double tol, int m_cap) {
  check_k(k);
  check_radius(a);
  if (!std::isfinite(alpha)) throw DomainError("flux alpha must be finite");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const double ka = k * a;
  const int m_min = static_cast<int>(std::ceil(ka)) + 10;
  if (m_cap < 0) m_cap = static_cast<int>(10.0 * ka) + 200;
  m_cap = std::max(m_cap, m_min);

  const int m0 = -static_cast<int>(std::floor(alpha));
  const double alpha0 = alpha + m0;  // in [0, 1)
  const std::complex<double> prefactor = -std::sqrt(2.0 / (kPi * k)) *
                                         std::polar(1.0, -0.25 * kPi);

  // upper[j] is the term at m = m0 + j, lower[j] at m = m0 - j (j >= 1).
  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> lower{{0.0, 0.0}};
  auto extend_to = [&](int j) {
    while (static_cast<int>(upper.size()) <= j) {
      const int jj = static_cast<int>(upper.size());
      upper.push_back(series_term(m0 + jj, alpha, k, a, bc, prefactor));
    }
    while (static_cast<int>(lower.size()) <= j) {
      const int jj = static_cast<int>(lower.size());
      lower.push_back(series_term(m0 - jj, alpha, k, a, bc, prefactor));
    }
  };

  // Geometric bound on the discarded terms past index M on one side. Valid
  // once the order exceeds ka, where the decay is faster than geometric.
  auto side_tail = [&](const std::vector<std::complex<double>>& side, int M,
                       double nu_next) {
    const double next = std::abs(side[M + 1]);
    if (next == 0.0) return 0.0;
    if (nu_next <= ka) return std::numeric_limits<double>::infinity();
    const double cur = std::abs(side[M]);
    const double rho = cur > 0.0 ? next / cur : 1.0;
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return next / (1.0 - rho);
  };

  int M = m_min;
  double tail = std::numeric_limits<double>::infinity();
  for (;; ++M) {
    if (M > m_cap) {
      throw ConvergenceError(
          "radius-correction series did not reach tol=" + std::to_string(tol) +
          " within m_max=" + std::to_string(m_cap));
    }
    extend_to(M + 1);
    tail = side_tail(upper, M, alpha0 + M + 1) +
           side_tail(lower, M, M + 1 - alpha0);
    if (tail < tol) break;
  }

  RadiusCorrection rc;
  rc.k_ = k;
  rc.m_first_ = m0 - M;
  rc.m_max_ = M;
  rc.tail_bound_ = tail;
  rc.coeffs_.resize(2 * static_cast<std::size_t>(M) + 1);
  for (int j = 0; j <= M; ++j) rc.coeffs_[M + j] = upper[j];
  for (int j = 1; j <= M; ++j) rc.coeffs_[M - j] = lower[j];
  return rc;
}

RadiusCorrection RadiusCorrection::build_fixed(double k, double alpha,
                                               double a,
                                               const BoundaryCondition& bc,
                                               int m_max) {
  check_k(k);
  check_radius(a);
  if (!std::isfinite(alpha)) throw DomainError("flux alpha must be finite");
  if (m_max < 0) throw DomainError("truncation order must be non-negative");

  const int m0 = -static_cast<int>(std::floor(alpha));
  const std::complex<double> prefactor = -std::sqrt(2.0 / (kPi * k)) *
                                         std::polar(1.0, -0.25 * kPi);
  RadiusCorrection rc;
  rc.k_ = k;
  rc.m_first_ = m0 - m_max;
  rc.m_max_ = m_max;
  rc.tail_bound_ = std::numeric_limits<double>::quiet_NaN();
  rc.coeffs_.resize(2 * static_cast<std::size_t>(m_max) + 1);
  for (std::size_t i = 0; i < rc.coeffs_.size(); ++i) {
    rc.coeffs_[i] = series_term(rc.m_first_ + static_cast<int>(i), alpha, k, a,
                                bc, prefactor);
  }
  return rc;
}

std::complex<double> RadiusCorrection::evaluate(double theta) const {
  // Outermost (smallest) terms first.
  std::complex<double> sum{0.0, 0.0};
  const int n = static_cast<int>(coeffs_.size());
  const int center = m_max_;
  for (int j = m_max_; j >= 0; --j) {
    const int hi = center + j;
    const int lo = center - j;
    sum += coeffs_[hi] * std::polar(1.0, (m_first_ + hi) * theta);
    if (j > 0 && lo >= 0 && lo < n) {
      sum += coeffs_[lo] * std::polar(1.0, (m_first_ + lo) * theta);
    }
  }
  return sum;
}

std::complex<double> f_zero_radius(double k, double theta, double alpha) {
  check_k(k);
  check_angle(theta);
  check_canonical_flux(alpha);
  const double half = 0.5 * theta;
  return std::sin(kPi * alpha) / sqrt_2piik(k) * std::polar(1.0, -half) /
         std::sin(half);
}

AmplitudeSeries f_r_lambda(double k, double theta, double alpha, double a,
                           const BoundaryCondition& bc, double tol) {
  if (!std::isfinite(theta)) throw DomainError("angle must be finite");
  const RadiusCorrection rc = RadiusCorrection::build(k, alpha, a, bc, tol);
  AmplitudeSeries s;
  s.k = k;
  s.theta = theta;
  s.alpha = alpha;
  s.a = a;
  s.bc = bc;
  s.m_max = rc.m_max();
  s.value = rc.evaluate(theta);
  s.tail_bound = rc.tail_bound();
  return s;
}

std::complex<double> amplitude(double k, double theta, double alpha, double a,
                               const BoundaryCondition& bc, double tol) {
  check_canonical_flux(alpha);
  const std::complex<double> zero = f_zero_radius(k, theta, alpha);
  return zero + f_r_lambda(k, theta, alpha, a, bc, tol).value;
}

double cross_section(double k, double theta, double alpha, double a,
                     const BoundaryCondition& bc, double tol) {
  return std::norm(amplitude(k, theta, alpha, a, bc, tol));
}

CanonicalFlux canonicalize_flux(double alpha_raw) {
  if (!std::isfinite(alpha_raw)) throw DomainError("flux must be finite");
  const double fl = std::floor(alpha_raw);
  CanonicalFlux c{alpha_raw - fl, static_cast<int>(fl)};
  if (c.alpha >= 1.0) {  // rounding, e.g. alpha_raw = -1e-18
    c.alpha = 0.0;
    c.n_shift += 1;
  }
  return c;
}

CrossSectionTable cross_section_table(std::span<const double> k_values,
                                      std::span<const double> theta_values,
                                      double alpha, double a,
                                      const BoundaryCondition& bc, double tol,
                                      unsigned threads) {
  check_canonical_flux(alpha);
  check_radius(a);
  for (double t : theta_values) check_angle(t);
  for (double k : k_values) check_k(k);

  const std::size_t nk = k_values.size();
  const std::size_t nt = theta_values.size();
  CrossSectionTable table;
  table.rows.resize(nk * nt);
  std::vector<int> orders(nk, 0);
  std::vector<std::exception_ptr> errors(nk);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < nk; i = next++) {
      try {
        const double k = k_values[i];
        const RadiusCorrection rc =
            RadiusCorrection::build(k, alpha, a, bc, tol);
        orders[i] = rc.m_max();
        for (std::size_t t = 0; t < nt; ++t) {
          const double theta = theta_values[t];
          const std::complex<double> f =
              f_zero_radius(k, theta, alpha) + rc.evaluate(theta);
          table.rows[i * nt + t] = {k, theta, std::norm(f)};
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(nk, 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  table.metadata = {alpha, a, bc,
                    orders.empty() ? 0 : *std::max_element(orders.begin(),
                                                           orders.end()),
                    tol};
  return table;
}

namespace detail {

std::complex<double> zero_radius_series(double k, double theta, double alpha) {
  check_k(k);
  check_angle(theta);
  if (!std::isfinite(alpha)) throw DomainError("flux alpha must be finite");

  // e^{2i Delta_m} equals e^{-i pi alpha} once m >= 0 and m + alpha >= 0, and
  // e^{i pi alpha} once both are <= 0. Those tails are geometric series in
  // e^{i theta}, summed in the Abel sense; the finite middle is explicit.
  const int upper_start = std::max(0, static_cast<int>(std::ceil(-alpha)));
  const int lower_end =
      std::min(upper_start - 1, std::min(0, static_cast<int>(std::floor(-alpha))));
  const std::complex<double> e_theta = std::polar(1.0, theta);
  const std::complex<double> up = std::polar(1.0, -kPi * alpha) - 1.0;
  const std::complex<double> down = std::polar(1.0, kPi * alpha) - 1.0;

  std::complex<double> sum = up * std::polar(1.0, upper_start * theta) /
                             (1.0 - e_theta);
  sum += down * std::polar(1.0, lower_end * theta) / (1.0 - std::conj(e_theta));
  for (int m = lower_end + 1; m < upper_start; ++m) {
    sum += (std::polar(1.0, 2.0 * delta_any_flux(m, alpha)) - 1.0) *
           std::polar(1.0, m * theta);
  }
  return sum / sqrt_2piik(k);
}

std::complex<double> amplitude_any_flux(double k, double theta, double alpha,
                                        double a, const BoundaryCondition& bc,
                                        double tol) {
  const RadiusCorrection rc = RadiusCorrection::build(k, alpha, a, bc, tol);
  return zero_radius_series(k, theta, alpha) + rc.evaluate(theta);
}

}  // namespace detail

}  // namespace abscat
