// Independent oracles kept in the test tree: direct quadrature for the
// elliptic integrals and ODE integration for the Jacobi functions.  They
// deliberately share no code with the library implementations.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

inline double k_quadrature(double m) {
  return adaptive_simpson(
      [m](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - m * s * s);
      },
      0.0, std::acos(-1.0) / 2.0);
}

inline double e_quadrature(double phi, double m) {
  if (phi == 0.0) return 0.0;
  return adaptive_simpson(
      [m](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - m * s * s);
      },
      0.0, phi);
}

inline double e_complete_quadrature(double m) {
  return e_quadrature(std::acos(-1.0) / 2.0, m);
}

/// Continuous Jacobi amplitude by RK4 integration of am' = dn(am):
/// am' = sqrt(1 - m sin^2(am)), am(0) = 0.
inline double amplitude_ode(double u, double m) {
  const double len = std::abs(u);
  if (len == 0.0) return 0.0;
  const int n = static_cast<int>(std::ceil(len / 2e-4));
  const double h = u / n;
  auto rhs = [m](double am) {
    return std::sqrt(std::max(0.0, 1.0 - m * std::sin(am) * std::sin(am)));
  };
  double am = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k1 = rhs(am);
    const double k2 = rhs(am + 0.5 * h * k1);
    const double k3 = rhs(am + 0.5 * h * k2);
    const double k4 = rhs(am + h * k3);
    am += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return am;
}

inline double sn_ode(double u, double m) { return std::sin(amplitude_ode(u, m)); }
inline double cn_ode(double u, double m) { return std::cos(amplitude_ode(u, m)); }
inline double dn_ode(double u, double m) {
  const double s = std::sin(amplitude_ode(u, m));
  return std::sqrt(1.0 - m * s * s);
}

}  // namespace oracle
