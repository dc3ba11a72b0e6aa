#include "etoc/form1.hpp"

#include <cmath>
#include <stdexcept>

#include "etoc/elliptic.hpp"

namespace etoc {

namespace {

constexpr double kDegenerateSinTol = 1e-9;

double big_l(const Form1Params& p) { return p.tf * p.z / p.mu; }

// Antiderivative pair for the x/y closed forms, up to the integration
// constant: evaluated at the elliptic argument w.
double x_raw(const Form1Params& p, double w) {
  const EllipticTriple t = jacobi(w, p.m);
  return -std::sqrt(p.m) * std::cos(p.phi) * t.cn +
         std::sin(p.phi) * (w - jacobi_epsilon(w, p.m));
}

double y_raw(const Form1Params& p, double w) {
  const EllipticTriple t = jacobi(w, p.m);
  return std::cos(p.phi) * (w - jacobi_epsilon(w, p.m)) +
         std::sqrt(p.m) * std::sin(p.phi) * t.cn;
}

Form1Params degenerate_params(const Problem& prob) {
  Form1Params p;
  p.mu = prob.mu;
  p.degenerate = true;
  p.direction = std::cos(prob.alpha) > 0.0 ? 1.0 : -1.0;
  p.z = std::sqrt(2.0 * prob.mu * (1.0 - prob.mu));
  p.tf = prob.mu * prob.r / p.z;
  p.q = 2.0;
  p.m = 1.0;
  p.n = 0;
  p.eta = 0.0;
  p.phi = p.direction * std::asin(1.0);  // lambda1 = -z sin(phi) = -/+ z
  p.cx = 0.0;
  p.cy = 0.0;
  p.mirror = 1.0;
  return p;
}

}  // namespace

Form1Params form1_derive_params(double q, double tf, double mu, int n,
                                double mirror) {
  if (!(q > 0.0) || !(q < 2.0)) {
    throw std::domain_error("form1: Q must lie in (0, 2)");
  }
  if (!(tf > 0.0)) {
    throw std::domain_error("form1: tf must be positive");
  }
  Form1Params p;
  p.mu = mu;
  p.tf = tf;
  p.q = q;
  p.n = n;
  p.m = 0.5 * q;
  p.z = std::sqrt(4.0 * mu * (1.0 - mu) / q);
  p.mirror = mirror;
  const double bigk = ellip_k(p.m);
  p.eta = (2.0 * n + 1.0) * bigk - tf * p.z / mu;
  p.phi = std::asin(std::sqrt(p.m) * jacobi(p.eta, p.m).sn);
  p.cx = -x_raw(p, p.eta);
  p.cy = -y_raw(p, p.eta);
  return p;
}

State form1_eval_state(const Form1Params& p, double tau) {
  if (!(tau >= 0.0) || !(tau <= 1.0)) {
    throw std::domain_error("form1: tau must lie in [0, 1]");
  }
  if (p.degenerate) {
    return {p.direction * p.z / p.mu * p.tf * tau, 0.0, 0.0};
  }
  const double u = big_l(p) * tau + p.eta;
  const double amp = std::asin(std::sqrt(p.m) * jacobi(u, p.m).sn);
  return {x_raw(p, u) + p.cx, p.mirror * (y_raw(p, u) + p.cy),
          p.mirror * (amp - p.phi)};
}

Control form1_eval_control(const Form1Params& p, double tau) {
  if (p.degenerate) {
    return {p.direction * p.z / p.mu, 0.0};
  }
  const double u = big_l(p) * tau + p.eta;
  const EllipticTriple t = jacobi(u, p.m);
  const double a = p.z * std::sqrt(p.m) / p.mu;
  return {a * t.sn, p.mirror * a * t.cn};
}

std::array<double, 4> form1_eval_costates(const Form1Params& p, double tau) {
  if (p.degenerate) {
    return {-p.z * std::sin(p.phi), 0.0, 0.0, 0.0};
  }
  const double u = big_l(p) * tau + p.eta;
  const double l1 = -p.z * std::sin(p.phi);
  const double l2 = -p.mirror * p.z * std::cos(p.phi);
  const double l3 = -p.mirror * p.z * std::sqrt(p.m) * jacobi(u, p.m).cn;
  // Slope vanishes identically because z^2 m = 2 mu (1 - mu).
  const double l4 = (-1.0 + p.mu + p.z * p.z * p.m / (2.0 * p.mu)) * tau;
  return {l1, l2, l3, l4};
}

std::array<double, 2> form1_residual(double q, double tf, const Problem& prob,
                                     int n) {
  const double mirror = prob.yf() < 0.0 ? -1.0 : 1.0;
  const Form1Params p = form1_derive_params(q, tf, prob.mu, n, mirror);
  const State s = form1_eval_state(p, 1.0);
  return {s.x - prob.xf(), s.y - prob.yf()};
}

std::array<double, 2> form1_default_guess(const Problem& prob) {
  return {1.0, prob.mu * prob.r / std::sqrt(2.0 * prob.mu * (1.0 - prob.mu))};
}

std::pair<Form1Params, SolveReport> form1_solve(const Problem& prob,
                                                std::array<double, 2> guess,
                                                std::uint64_t seed,
                                                int n_starts) {
  if (std::abs(std::sin(prob.alpha)) <= kDegenerateSinTol) {
    SolveReport rep;
    rep.converged = true;
    rep.multistart_attempts = 1;
    const Form1Params p = degenerate_params(prob);
    rep.root = {p.q, p.tf};
    rep.guess_used = rep.root;
    return {p, rep};
  }
  if (guess[0] == 0.0 && guess[1] == 0.0) {
    guess = form1_default_guess(prob);
  }
  const Box box{{1e-4, 1e-3}, {2.0 - 1e-4, 100.0}};
  const double mirror = prob.yf() < 0.0 ? -1.0 : 1.0;
  SolveReport rep;
  int n_used = 0;
  for (int n : {0, 1}) {
    auto fn = [&prob, n](const std::vector<double>& x) {
      const std::array<double, 2> r = form1_residual(x[0], x[1], prob, n);
      return std::vector<double>{r[0], r[1]};
    };
    // Cost is 2 tf (1 - mu): among coexisting roots, the shortest tf wins.
    rep = multistart_best(
        fn, {guess[0], guess[1]}, box, n_starts, seed,
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return a[1] < b[1];
        });
    n_used = n;
    if (rep.converged) break;
  }
  if (!rep.converged) {
    return {Form1Params{}, rep};
  }
  return {form1_derive_params(rep.root[0], rep.root[1], prob.mu, n_used,
                              mirror),
          rep};
}

double form1_stationary_time(const Form1Params& p) {
  if (p.degenerate) return 0.0;
  return -p.eta * p.mu / (p.tf * p.z);
}

double form1_transition_condition(const Form1Params& p) {
  const double m = std::min(p.m, 1.0 - 1e-12);
  return p.tf * p.z - p.mu * (2.0 * p.n + 1.0) * ellip_k(m);
}

}  // namespace etoc
