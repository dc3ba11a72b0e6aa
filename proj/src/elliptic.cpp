#include "etoc/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace etoc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHyperbolicClamp = 1.0 - 1e-12;

void require_parameter(double m, double hi) {
  if (!(m >= 0.0) || !(m < hi) || std::isnan(m)) {
    throw std::domain_error("elliptic parameter m out of domain");
  }
}

// Carlson symmetric integral R_F(x, y, z) by the duplication theorem.
double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 1e-10;
  double xt = x, yt = y, zt = z;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    const double mu = (xt + yt + zt) / 3.0;
    const double dx = (mu - xt) / mu, dy = (mu - yt) / mu, dz = (mu - zt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
             std::sqrt(mu);
    }
  }
  throw std::runtime_error("carlson_rf failed to converge");
}

// Carlson symmetric integral R_D(x, y, z).
double carlson_rd(double x, double y, double z) {
  constexpr double errtol = 1e-10;
  double xt = x, yt = y, zt = z;
  double sum = 0.0, fac = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    const double mu = (xt + yt + 3.0 * zt) / 5.0;
    const double dx = (mu - xt) / mu, dy = (mu - yt) / mu, dz = (mu - zt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
      const double ea = dx * dy;
      const double eb = dz * dz;
      const double ec = ea - eb;
      const double ed = ea - 6.0 * eb;
      const double ee = ed + ec + ec;
      return 3.0 * sum +
             fac *
                 (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed -
                              4.5 / 26.0 * dz * ee) +
                  dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec +
                                               3.0 / 26.0 * dz * ea))) /
                 (mu * std::sqrt(mu));
    }
  }
  throw std::runtime_error("carlson_rd failed to converge");
}

// Principal value sn(w, m) for |w| <= K(m), 0 < m < 1, by descending
// Gauss/Landen transformation (DLMF 22.7.2).
double sn_descent(double w, double m) {
  // Collect the descending parameter chain until it is trigonometric.
  double k1[64];
  int depth = 0;
  double mc = m;
  double arg = w;
  while (mc > 1e-16 && depth < 64) {
    const double kp = std::sqrt(1.0 - mc);
    const double kk = (1.0 - kp) / (1.0 + kp);
    k1[depth++] = kk;
    arg /= (1.0 + kk);
    mc = kk * kk;
  }
  double s = std::sin(arg);
  for (int i = depth - 1; i >= 0; --i) {
    const double kk = k1[i];
    s = (1.0 + kk) * s / (1.0 + kk * s * s);
  }
  return std::clamp(s, -1.0, 1.0);
}

}  // namespace

bool hyperbolic_limit(double m) { return m >= kHyperbolicClamp; }

double ellip_k(double m) {
  require_parameter(m, 1.0);
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int it = 0; it < 60 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double ellip_e_complete(double m) {
  if (!(m >= 0.0) || !(m <= 1.0)) {
    throw std::domain_error("ellip_e_complete: m outside [0, 1]");
  }
  if (m == 0.0) return kPi / 2.0;
  if (m == 1.0) return 1.0;
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  double sum = c * c / 2.0;
  double pow2 = 1.0;
  for (int it = 0; it < 60 && std::abs(c) > 1e-17; ++it) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 / 2.0 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double ellip_e_incomplete(double phi, double m) {
  if (!(m >= 0.0) || !(m <= 1.0)) {
    throw std::domain_error("ellip_e_incomplete: m outside [0, 1]");
  }
  if (!std::isfinite(phi)) {
    throw std::domain_error("ellip_e_incomplete: phi not finite");
  }
  // Reduce to the principal interval [-pi/2, pi/2]; E is odd and
  // quasi-periodic with increment 2 E(m) per pi.
  const double n = std::round(phi / kPi);
  const double phir = phi - n * kPi;
  double base = 0.0;
  if (n != 0.0) base = 2.0 * n * ellip_e_complete(m);
  const double s = std::sin(phir);
  const double c = std::cos(phir);
  const double s2 = s * s;
  const double q = 1.0 - m * s2;
  if (std::abs(s) < 1e-300) return base;
  if (q <= 1e-14) {
    // m -> 1 with phi at the edge of the principal interval.
    return base + s;
  }
  const double c2 = c * c;
  const double e = s * carlson_rf(c2, q, 1.0) -
                   (m / 3.0) * s * s2 * carlson_rd(c2, q, 1.0);
  return base + e;
}

EllipticTriple jacobi(double u, double m) {
  if (!(m >= 0.0) || !(m <= 1.0)) {
    throw std::domain_error("jacobi: m outside [0, 1]");
  }
  if (!std::isfinite(u)) {
    throw std::domain_error("jacobi: u not finite");
  }
  if (m < 1e-16) {
    return {std::sin(u), std::cos(u), std::sqrt(1.0 - m * std::pow(std::sin(u), 2)), u};
  }
  if (hyperbolic_limit(m)) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech, std::atan(std::sinh(u))};
  }
  const double bigk = ellip_k(m);
  // Reduce to w in [-K, K] where the amplitude is principal and cn >= 0.
  const double nper = std::floor((u + bigk) / (2.0 * bigk));
  const double w = u - 2.0 * nper * bigk;
  const double snw = sn_descent(w, m);
  const double cnw = std::sqrt(std::max(0.0, 1.0 - snw * snw));
  const double dn = std::sqrt(std::max(0.0, 1.0 - m * snw * snw));
  const double amw = std::asin(snw);
  const double sign = (static_cast<long long>(nper) % 2 == 0) ? 1.0 : -1.0;
  return {sign * snw, sign * cnw, dn, nper * kPi + amw};
}

double jacobi_epsilon(double u, double m) {
  require_parameter(m, 1.0);
  const EllipticTriple t = jacobi(u, m);
  return ellip_e_incomplete(t.am, m);
}

}  // namespace etoc
