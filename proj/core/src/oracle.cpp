#include "abscat/oracle.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <ios>
#include <numbers>
#include <string>

#include "abscat/errors.hpp"
#include "abscat/special_fn.hpp"

namespace abscat {
namespace {

constexpr double kPi = std::numbers::pi;

using Big = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<160>,
    boost::multiprecision::et_off>;

const Big& series_eps() {
  static const Big eps = Big(1) / boost::multiprecision::pow(Big(10), 155);
  return eps;
}

// J_mu(x) = sum_k (-x^2/4)^k (x/2)^mu / (k! Gamma(k + mu + 1)); mu may be
// negative but not a negative integer.
Big series_j(const Big& mu, const Big& x) {
  const Big half = x / 2;
  const Big q = -half * half;
  Big term = boost::multiprecision::pow(half, mu) /
             boost::multiprecision::tgamma(mu + 1);
  Big sum = term;
  for (int k = 0;; ++k) {
    term *= q / ((k + 1) * (k + 1 + mu));
    sum += term;
    if (k > x && abs(term) <= series_eps() * abs(sum)) break;
    if (k > 100000) throw ConvergenceError("bessel_reference: J series");
  }
  return sum;
}

// Y_n for integer n >= 0.
Big series_y_integer(int n, const Big& x, const Big& jn) {
  using boost::math::constants::euler;
  using boost::math::constants::pi;
  const Big half = x / 2;
  const Big q = half * half;

  Big finite = 0;
  if (n > 0) {
    // sum_{k<n} (n-k-1)!/k! (x/2)^{2k-n}
    Big fact_num = boost::multiprecision::tgamma(Big(n));  // (n-1)!
    Big fact_den = 1;
    Big power = boost::multiprecision::pow(half, -n);
    for (int k = 0; k < n; ++k) {
      finite += fact_num / fact_den * power;
      if (k + 1 < n) {
        fact_num /= (n - k - 1);
        fact_den *= (k + 1);
        power *= q;
      }
    }
  }

  // sum_k [psi(k+1) + psi(n+k+1)] (-x^2/4)^k / (k! (n+k)!)
  const Big gamma_e = euler<Big>();
  Big psi_k = -gamma_e;
  Big psi_nk = -gamma_e;
  for (int i = 1; i <= n; ++i) psi_nk += Big(1) / i;
  Big term = 1 / boost::multiprecision::tgamma(Big(n + 1));
  Big sum = (psi_k + psi_nk) * term;
  for (int k = 0;; ++k) {
    term *= -q / ((k + 1) * (n + k + 1));
    psi_k += Big(1) / (k + 1);
    psi_nk += Big(1) / (n + k + 1);
    const Big add = (psi_k + psi_nk) * term;
    sum += add;
    if (k > x && abs(add) <= series_eps() * abs(sum)) break;
    if (k > 100000) throw ConvergenceError("bessel_reference: Y series");
  }
  sum *= boost::multiprecision::pow(half, n);

  const Big p = pi<Big>();
  return 2 / p * jn * log(half) - finite / p - sum / p;
}

double g_of(double c, double k, double r) { return c / (r * r) - k * k; }

// Hankel asymptotic series P(nu, x), Q(nu, x), summed until the terms stop
// decreasing.
void hankel_pq(double nu, double x, double& p, double& q) {
  const double mu = 4.0 * nu * nu;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= last) break;
    last = std::abs(next);
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (last < 1e-17) break;
  }
}

}  // namespace

BesselReference bessel_reference(double nu, double x, int digits) {
  if (!(nu >= 0.0 && nu <= 40.0)) {
    throw UnsupportedRange("bessel_reference: nu must lie in [0, 40]");
  }
  if (!(x > 0.0 && x <= 100.0)) {
    throw UnsupportedRange("bessel_reference: x must lie in (0, 100]");
  }
  if (digits < 20 || digits > 60) {
    throw UnsupportedRange("bessel_reference: digits must lie in [20, 60]");
  }
  const Big bnu(nu);
  const Big bx(x);
  const Big j = series_j(bnu, bx);
  Big y;
  if (nu == std::floor(nu)) {
    y = series_y_integer(static_cast<int>(nu), bx, j);
  } else {
    const Big p = boost::math::constants::pi<Big>();
    const Big jm = series_j(-bnu, bx);
    y = (j * cos(bnu * p) - jm) / sin(bnu * p);
  }
  return {j.str(digits - 1, std::ios_base::scientific),
          y.str(digits - 1, std::ios_base::scientific), static_cast<double>(j),
          static_cast<double>(y)};
}

std::size_t recommended_steps(double nu, double k, double a, double r_max) {
  const double local = std::max(k, std::sqrt(std::abs(nu * nu - 0.25)) / a);
  const double h = 2.0 * kPi / (400.0 * local);
  return static_cast<std::size_t>(std::ceil((r_max - a) / h));
}

RadialSolution integrate_radial(double nu, double k, double a,
                                const BoundaryCondition& bc, double r_max,
                                std::size_t n_steps, double scale) {
  if (!(nu >= 0.0) || !(k > 0.0) || !(a > 0.0) || !std::isfinite(k) ||
      !std::isfinite(a)) {
    throw DomainError("integrate_radial: need nu >= 0, k > 0, a > 0");
  }
  if (!(r_max >= std::max(50.0 / k, 20.0 * a)) || !std::isfinite(r_max)) {
    throw DomainError("integrate_radial: r_max must be at least "
                      "max(50/k, 20a)");
  }
  if (n_steps < 2) throw ResolutionError("integrate_radial: too few steps");
  const double h = (r_max - a) / static_cast<double>(n_steps);
  if (2.0 * kPi / k / h < 20.0) {
    throw ResolutionError("integrate_radial: fewer than 20 points per "
                          "wavelength");
  }

  double psi0 = 0.0;
  double dpsi0 = 1.0;
  if (bc.is_neumann()) {
    psi0 = 1.0;
    dpsi0 = 0.5 / a;
  } else if (bc.kind() == BoundaryKind::robin) {
    psi0 = bc.lambda();
    dpsi0 = 1.0 + bc.lambda() / (2.0 * a);
  }
  psi0 *= scale;
  dpsi0 *= scale;

  const double c = nu * nu - 0.25;
  RadialSolution sol{nu, k, a, bc, h, {}, {}};
  sol.r.resize(n_steps + 1);
  sol.u.resize(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    sol.r[i] = a + static_cast<double>(i) * h;
  }
  sol.r[n_steps] = r_max;

  // Taylor step for psi(a + h) with g = c r^{-2} - k^2.
  const double g0 = g_of(c, k, a);
  const double g1 = -2.0 * c / (a * a * a);
  const double g2 = 6.0 * c / (a * a * a * a);
  const double g3 = -24.0 * c / std::pow(a, 5);
  const double g4 = 120.0 * c / std::pow(a, 6);
  const double d2 = g0 * psi0;
  const double d3 = g1 * psi0 + g0 * dpsi0;
  const double d4 = (g2 + g0 * g0) * psi0 + 2.0 * g1 * dpsi0;
  const double d5 = (g3 + 4.0 * g0 * g1) * psi0 + (3.0 * g2 + g0 * g0) * dpsi0;
  const double d6 =
      (g4 + 4.0 * g1 * g1 + 7.0 * g0 * g2 + g0 * g0 * g0) * psi0 +
      (4.0 * g3 + 6.0 * g0 * g1) * dpsi0;
  sol.u[0] = psi0;
  sol.u[1] = psi0 +
             h * (dpsi0 +
                  h / 2.0 *
                      (d2 + h / 3.0 *
                                (d3 + h / 4.0 *
                                          (d4 + h / 5.0 *
                                                    (d5 + h / 6.0 * d6)))));

  const double w = h * h / 12.0;
  double f_prev = 1.0 - w * g_of(c, k, sol.r[0]);
  double f_cur = 1.0 - w * g_of(c, k, sol.r[1]);
  for (std::size_t i = 1; i < n_steps; ++i) {
    const double f_next = 1.0 - w * g_of(c, k, sol.r[i + 1]);
    sol.u[i + 1] = ((12.0 - 10.0 * f_cur) * sol.u[i] - f_prev * sol.u[i - 1]) /
                   f_next;
    f_prev = f_cur;
    f_cur = f_next;
  }
  return sol;
}

double numerov_wronskian(const RadialSolution& first,
                         const RadialSolution& second, std::size_t n) {
  if (first.u.size() != second.u.size() || n + 1 >= first.u.size()) {
    throw DomainError("numerov_wronskian: incompatible grids or index");
  }
  const double c = first.nu * first.nu - 0.25;
  const double w = first.h * first.h / 12.0;
  const double f0 = 1.0 - w * g_of(c, first.k, first.r[n]);
  const double f1 = 1.0 - w * g_of(c, first.k, first.r[n + 1]);
  return f0 * f1 *
         (first.u[n] * second.u[n + 1] - first.u[n + 1] * second.u[n]);
}

double reduce_mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

double distance_mod_pi(double x, double y) {
  const double d = reduce_mod_pi(x - y);
  return std::min(d, kPi - d);
}

ExtractedPhase extract_phase_shift(const RadialSolution& sol, int m,
                                   double alpha) {
  const std::size_t n = sol.r.size();
  if (n < 8) throw DomainError("extract_phase_shift: grid too short");
  if (!(sol.k * sol.r.back() >= 50.0)) {
    throw DomainError("extract_phase_shift: need k r_max >= 50");
  }
  const std::size_t start = n - n / 4;

  double sjj = 0.0, sjy = 0.0, syy = 0.0, sjp = 0.0, syp = 0.0;
  std::vector<double> uj(n - start), uy(n - start);
  for (std::size_t i = start; i < n; ++i) {
    const double x = sol.k * sol.r[i];
    const double chi = x - sol.nu * kPi / 2.0 - kPi / 4.0;
    double p = 0.0, q = 0.0;
    hankel_pq(sol.nu, x, p, q);
    const double cj = p * std::cos(chi) - q * std::sin(chi);
    const double cy = p * std::sin(chi) + q * std::cos(chi);
    uj[i - start] = cj;
    uy[i - start] = cy;
    sjj += cj * cj;
    sjy += cj * cy;
    syy += cy * cy;
    sjp += cj * sol.u[i];
    syp += cy * sol.u[i];
  }
  const double det = sjj * syy - sjy * sjy;
  const double c1 = (syy * sjp - sjy * syp) / det;
  const double c2 = (sjj * syp - sjy * sjp) / det;

  double ss = 0.0;
  for (std::size_t i = start; i < n; ++i) {
    const double res = sol.u[i] - c1 * uj[i - start] - c2 * uy[i - start];
    ss += res * res;
  }
  ExtractedPhase out;
  out.amplitude = std::hypot(c1, c2);
  out.residual_rms = std::sqrt(ss / static_cast<double>(n - start));
  out.theta = std::atan2(-c2, c1);
  out.delta = reduce_mod_pi(out.theta + detail::delta_any_flux(m, alpha));
  if (!(out.residual_rms <= 1e-3 * out.amplitude)) {
    throw FitQualityError("extract_phase_shift: residual RMS " +
                          std::to_string(out.residual_rms) +
                          " exceeds 1e-3 of the amplitude");
  }
  return out;
}

ExtractedPhase ode_phase_shift(const SectorParams& sector, double k) {
  const double nu = sector.nu();
  const double a = sector.a();
  const double r_max =
      std::max({60.0 / k, 20.0 * a, 2.0 * (nu * nu + 10.0) / k});
  const RadialSolution sol = integrate_radial(
      nu, k, a, sector.bc(), r_max, recommended_steps(nu, k, a, r_max));
  return extract_phase_shift(sol, sector.m(), sector.alpha());
}

double completeness_check(const TestFunction& psi, double nu,
                          const BoundaryCondition& bc, double a, double r0,
                          double k_max, double quad_tol, double k_min) {
  if (!(psi.lo > a) || !(psi.hi > psi.lo)) {
    throw DomainError("completeness_check: support must lie inside (a, inf)");
  }
  if (!(k_max > k_min) || !(k_min > 0.0)) {
    throw DomainError("completeness_check: need 0 < k_min < k_max");
  }
  using boost::math::quadrature::gauss_kronrod;

  auto check = [quad_tol](double err, double l1, const char* what) {
    if (!(err <= 10.0 * quad_tol * l1 + 1e-300)) {
      throw ConvergenceError(std::string("completeness_check: ") + what +
                             " quadrature missed its tolerance");
    }
  };

  // Normalised boundary combinations at ka.
  auto weights = [&](double k, double& n_hat, double& j_hat) {
    const BesselQuad q = bessel_quad(nu, k * a);
    const MixingWeights mw = mixing_weights(bc, k);
    const double jc = mw.value * q.j + mw.slope * q.jp;
    const double nc = mw.value * q.y + mw.slope * q.yp;
    const double d = std::hypot(jc, nc);
    n_hat = nc / d;
    j_hat = jc / d;
  };

  auto outer = [&](double k) {
    double n_hat = 0.0, j_hat = 0.0;
    weights(k, n_hat, j_hat);
    auto mode = [&](double r) {
      const BesselQuad q = bessel_quad(nu, k * r);
      return n_hat * q.j - j_hat * q.y;
    };
    auto inner = [&](double s) { return mode(s) * psi.f(s) * s; };
    const int panels = std::max(
        1, static_cast<int>(std::ceil(k * (psi.hi - psi.lo) / (2.0 * kPi))));
    const double width = (psi.hi - psi.lo) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      double err = 0.0, l1 = 0.0;
      sum += gauss_kronrod<double, 31>::integrate(
          inner, psi.lo + p * width, psi.lo + (p + 1) * width, 10, quad_tol,
          &err, &l1);
      check(err, l1, "inner");
    }
    return k * mode(r0) * sum;
  };

  const double max_width = kPi / (4.0 * psi.hi);
  const int panels =
      static_cast<int>(std::ceil((k_max - k_min) / max_width));
  const double width = (k_max - k_min) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double err = 0.0, l1 = 0.0;
    total += gauss_kronrod<double, 15>::integrate(
        outer, k_min + p * width, k_min + (p + 1) * width, 8, quad_tol, &err,
        &l1);
    check(err, l1, "outer");
  }
  return total;
}

TestFunction bump_function(double center, double half_width) {
  auto f = [center, half_width](double r) {
    const double t = (r - center) / half_width;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  return {f, center - half_width, center + half_width};
}

}  // namespace abscat
