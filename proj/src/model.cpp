#include "etoc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace etoc {

namespace {

void require_mu(double mu) {
  if (!(mu >= kMuMin) || !(mu <= 1.0 - kMuMin)) {
    throw std::domain_error("mu must lie in [1e-3, 1 - 1e-3]");
  }
}

}  // namespace

Problem Problem::from_cartesian(double mu, double xf, double yf,
                                Formulation f) {
  require_mu(mu);
  const double r = std::hypot(xf, yf);
  if (!(r > 0.0)) {
    throw std::domain_error("target must differ from the origin");
  }
  return Problem{mu, r, std::atan2(yf, xf), f};
}

Problem Problem::from_polar(double mu, double r, double alpha, Formulation f) {
  require_mu(mu);
  if (!(r > 0.0)) {
    throw std::domain_error("target radius must be positive");
  }
  return Problem{mu, r, alpha, f};
}

double Problem::xf() const { return r * std::cos(alpha); }
double Problem::yf() const { return r * std::sin(alpha); }

State kinematics_rhs(const State& s, const Control& c, double tf) {
  if (!(tf > 0.0)) {
    throw std::domain_error("tf must be positive");
  }
  return {tf * c.v * std::cos(s.theta), tf * c.v * std::sin(s.theta),
          tf * c.omega};
}

double hamiltonian(const State& s, const Control& c,
                   const std::array<double, 3>& lam, double tf, double mu) {
  if (!(tf > 0.0)) {
    throw std::domain_error("tf must be positive");
  }
  return tf * ((1.0 - mu) + 0.5 * mu * (c.v * c.v + c.omega * c.omega) +
               lam[0] * c.v * std::cos(s.theta) +
               lam[1] * c.v * std::sin(s.theta) + lam[2] * c.omega);
}

double cost_quadrature(std::span<const Control> controls, double tf,
                       double mu) {
  const std::size_t n = controls.size();
  if (n < 2) {
    throw std::invalid_argument("cost_quadrature needs at least 2 samples");
  }
  if (!(tf > 0.0)) {
    throw std::domain_error("tf must be positive");
  }
  auto f = [&](std::size_t i) {
    const Control& c = controls[i];
    return (1.0 - mu) + 0.5 * mu * (c.v * c.v + c.omega * c.omega);
  };
  const std::size_t intervals = n - 1;
  const double h = 1.0 / static_cast<double>(intervals);
  double integral = 0.0;
  std::size_t simpson_end = intervals;  // even prefix handled by Simpson 1/3
  if (intervals % 2 == 1) {
    if (intervals >= 3) {
      simpson_end = intervals - 3;
    } else {
      // single interval: trapezoid is all we have
      return tf * 0.5 * h * (f(0) + f(1));
    }
  }
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    integral += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
  }
  if (simpson_end != intervals) {
    // Simpson 3/8 on the trailing three intervals keeps O(h^4).
    const std::size_t i = simpson_end;
    integral += 3.0 * h / 8.0 * (f(i) + 3.0 * f(i + 1) + 3.0 * f(i + 2) + f(i + 3));
  }
  return tf * integral;
}

double control_radius(double mu) {
  require_mu(mu);
  return std::sqrt(2.0 * mu * (1.0 - mu)) / mu;
}

}  // namespace etoc
