#pragma once

namespace etoc {

/// Jacobi elliptic function values at (u, m).
///
/// The second argument throughout this library is the PARAMETER m = k^2,
/// not the modulus k.  `am` is the continuous amplitude,
/// am(u + 2K(m), m) = am(u, m) + pi, so sn = sin(am) and cn = cos(am)
/// hold for arbitrarily large |u|.
struct EllipticTriple {
  double sn;
  double cn;
  double dn;
  double am;
};

/// Complete elliptic integral of the first kind K(m), 0 <= m < 1.
/// Throws std::domain_error outside the domain.
double ellip_k(double m);

/// Complete elliptic integral of the second kind E(m), 0 <= m <= 1.
double ellip_e_complete(double m);

/// Incomplete elliptic integral of the second kind
/// E(phi, m) = integral_0^phi sqrt(1 - m sin^2 t) dt, 0 <= m <= 1.
/// Odd in phi and quasi-periodic: E(phi + pi, m) = E(phi, m) + 2 E(m).
double ellip_e_incomplete(double phi, double m);

/// sn, cn, dn and the continuous amplitude at (u, m), 0 <= m <= 1.
/// m >= 1 - 1e-12 is evaluated with the hyperbolic (m = 1) limit forms;
/// hyperbolic_limit(m) reports when that clamp applies.
EllipticTriple jacobi(double u, double m);

/// Jacobi epsilon function E(am(u, m), m), 0 <= m < 1.  Antiderivative of
/// dn^2(u, m); quasi-periodic with period increment 2 E(m) per 2 K(m).
double jacobi_epsilon(double u, double m);

/// True when `m` falls in the range that jacobi() clamps to the m = 1
/// hyperbolic limit (K(m) would otherwise blow up iteration counts).
bool hyperbolic_limit(double m);

}  // namespace etoc
