#include "abscat/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "abscat/errors.hpp"

namespace abscat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-30;
constexpr int kMaxIter = 200000;

// Below this argument the Temme series is used for Y; above it, Steed's
// complex continued fraction.
constexpr double kTemmeLimit = 2.0;

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 27> kRecipGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
};

// Gamma-related quantities needed by the Temme series for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
struct TemmeGammas {
  double gam1;
  double gam2;
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  double even = 0.0;
  double odd = 0.0;
  double power = 1.0;
  for (std::size_t j = 0; j < kRecipGammaTaylor.size(); ++j) {
    if (j % 2 == 0) {
      even += kRecipGammaTaylor[j] * power;
    } else {
      odd += kRecipGammaTaylor[j] * power;
    }
    if (j % 2 == 1) power *= mu * mu;
  }
  // even = sum b_{2i} mu^{2i}; odd = sum b_{2i+1} mu^{2i}
  TemmeGammas g{};
  g.gam1 = -odd;
  g.gam2 = even;
  g.gampl = even + mu * odd;
  g.gammi = even - mu * odd;
  return g;
}

// J and Y at orders nu and nu + 1.
struct OrderPair {
  double j;
  double j_next;
  double y;
  double y_next;
};

// Continued fraction CF1 for J'_nu/J_nu, Miller backward recurrence down to
// |mu| <= 1/2, then Temme's series (small x) or Steed's CF2 (larger x) fixes
// the normalisation through the Wronskian. Y is recurred upward from mu,
// which is the stable direction.
OrderPair temme_steed(double nu, double x) {
  const int nl = x < kTemmeLimit
                     ? static_cast<int>(nu + 0.5)
                     : std::max(0, static_cast<int>(nu - x + 1.5));
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;

  // CF1 (modified Lentz).
  int isign = 1;
  double h = nu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 0;
  for (; i < kMaxIter; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  if (i >= kMaxIter) {
    throw ConvergenceError("bessel_quad: CF1 did not converge at nu=" +
                           std::to_string(nu) + " x=" + std::to_string(x));
  }

  // Backward recurrence of the unnormalised J and J'.
  double rjl = isign * kTiny;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  const double rjp1 = rjpl;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  double rjmu = 0.0;
  double rymu = 0.0;
  double ry1 = 0.0;
  if (x < kTemmeLimit) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = mu * dd;
    const double fct2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = 2.0 / kPi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fct2 * dd);
    e = std::exp(e);
    double p = e / (g.gampl * kPi);
    double q = 1.0 / (e * kPi * g.gammi);
    const double pimu2 = 0.5 * pimu;
    const double fct3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
    const double r = kPi * pimu2 * fct3 * fct3;
    double cc = 1.0;
    dd = -x2 * x2;
    double sum = ff + r * q;
    double sum1 = p;
    int k = 1;
    for (; k < kMaxIter; ++k) {
      ff = (k * ff + p + q) / (k * static_cast<double>(k) - mu2);
      cc *= dd / k;
      p /= (k - mu);
      q /= (k + mu);
      const double del = cc * (ff + r * q);
      sum += del;
      const double del1 = cc * p - k * del;
      sum1 += del1;
      if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
    }
    if (k >= kMaxIter) {
      throw ConvergenceError("bessel_quad: Temme series did not converge");
    }
    rymu = -sum;
    ry1 = -sum1 * xi2;
    const double rymup = mu * xi * rymu - ry1;
    rjmu = w / (rymup - f * rymu);
  } else {
    double a = 0.25 - mu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    int k = 1;
    for (; k < kMaxIter; ++k) {
      a += 2 * k;
      bi += 2.0;
      dr = a * dr + br;
      di = a * di + bi;
      if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
      fct = a / (cr * cr + ci * ci);
      cr = br + cr * fct;
      ci = bi - ci * fct;
      if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
      den = dr * dr + di * di;
      dr /= den;
      di /= -den;
      dlr = cr * dr - ci * di;
      dli = cr * di + ci * dr;
      temp = p * dlr - q * dli;
      q = p * dli + q * dlr;
      p = temp;
      if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
    }
    if (k >= kMaxIter) {
      throw ConvergenceError("bessel_quad: CF2 did not converge");
    }
    const double gam = (p - f) / q;
    rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    rymu = rjmu * gam;
    const double rymup = rymu * (p + q / gam);
    ry1 = mu * xi * rymu - rymup;
  }

  const double scale = rjmu / rjl;
  const double j = rjl1 * scale;
  const double jp = rjp1 * scale;
  for (int l = 1; l <= nl; ++l) {
    const double rytemp = (mu + l) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
  }
  return OrderPair{j, nu * xi * j - jp, rymu, ry1};
}

// Hankel's large-argument expansion; caller guarantees x >= max(35, nu^2).
void hankel_asymptotic(double nu, double x, double& j, double& y) {
  const double mu4 = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu4 - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series started to diverge
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (mag < 1e-17 * std::max(std::abs(p), std::abs(q))) break;
    prev = mag;
  }
  // chi = x - (nu/2 + 1/4) pi, expanded to keep the large x out of a
  // subtraction before the trig call.
  const double shift = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double cs = std::cos(shift);
  const double ss = std::sin(shift);
  const double cchi = cx * cs + sx * ss;
  const double schi = sx * cs - cx * ss;
  const double amp = std::sqrt(2.0 / (kPi * x));
  j = amp * (p * cchi - q * schi);
  y = amp * (p * schi + q * cchi);
}

bool use_asymptotic(double nu, double x) {
  const double top = nu + 1.0;
  return x >= 35.0 && x >= top * top;
}

// log|Y_nu(x)| for x well below nu, from the leading small-argument term.
double log_y_small_argument(double nu, double x) {
  if (nu <= 0.0) return std::log(std::abs(std::log(x)) + 1.0);
  return std::lgamma(nu) + nu * std::log(2.0 / x) - std::log(kPi);
}

}  // namespace

BesselQuad bessel_quad(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x)) {
    throw DomainError("bessel_quad: non-finite argument");
  }
  if (nu < 0.0) throw DomainError("bessel_quad: negative order");
  if (x <= 0.0) throw DomainError("bessel_quad: argument must be positive");

  constexpr double kLogMax = 709.0;
  if (x < nu + 1.0 && log_y_small_argument(nu + 1.0, x) > kLogMax - 2.0) {
    throw OverflowError("bessel_quad: Y_nu(x) overflows at nu=" +
                        std::to_string(nu) + " x=" + std::to_string(x));
  }

  OrderPair pair{};
  if (use_asymptotic(nu, x)) {
    hankel_asymptotic(nu, x, pair.j, pair.y);
    hankel_asymptotic(nu + 1.0, x, pair.j_next, pair.y_next);
  } else {
    pair = temme_steed(nu, x);
  }

  BesselQuad q;
  q.nu = nu;
  q.x = x;
  q.j = pair.j;
  q.y = pair.y;
  q.jp = -pair.j_next + (nu / x) * pair.j;
  q.yp = -pair.y_next + (nu / x) * pair.y;
  if (!std::isfinite(q.y) || !std::isfinite(q.yp)) {
    throw OverflowError("bessel_quad: Y_nu(x) not representable at nu=" +
                        std::to_string(nu) + " x=" + std::to_string(x));
  }
  if (!std::isfinite(q.j) || !std::isfinite(q.jp)) {
    throw KernelFailure("bessel_quad: non-finite J at nu=" +
                        std::to_string(nu) + " x=" + std::to_string(x));
  }
  return q;
}

HankelValue hankel1(const BesselQuad& q) noexcept {
  return HankelValue{{q.j, q.y}, {q.jp, q.yp}};
}

double gamma_fn(double x) {
  // Godfrey's coefficients, g = 7, n = 9.
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
      771.32342877765313,    -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;

  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma_fn: argument must be positive and finite");
  }
  if (x > 171.6) throw OverflowError("gamma_fn: result overflows");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;

  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kG + 0.5;
  // t^(z+1/2) split in two halves so it stays finite up to x ~ 171.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace abscat
