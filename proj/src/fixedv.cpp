#include "etoc/fixedv.hpp"

#include <cmath>
#include <stdexcept>

#include "etoc/elliptic.hpp"

namespace etoc {

namespace {

constexpr double kDegenerateSinTol = 1e-9;

double omega_amp(const FixedVParams& p) {
  return std::sqrt(2.0 * p.mu * p.vc * p.kc + 2.0 * p.cc) / p.mu;
}

// (2/Lambda) eps_J(u) - tau and (2 sqrt(m)/Lambda) cn(u), the two
// primitives the x/y closed forms combine.
double prim_p(const FixedVParams& p, double u, double tau) {
  return 2.0 / p.lambda_cap * jacobi_epsilon(u, p.m) - tau;
}

double prim_c(const FixedVParams& p, double u) {
  return 2.0 * std::sqrt(p.m) / p.lambda_cap * jacobi(u, p.m).cn;
}

double zeta5_raw(const FixedVParams& p, double u, double tau) {
  return -p.tf * (p.mu * p.vc + p.kc) * tau +
         2.0 * p.kc * p.tf / p.lambda_cap * (u - jacobi_epsilon(u, p.m));
}

FixedVParams degenerate_params(const Problem& prob) {
  FixedVParams p;
  p.mu = prob.mu;
  p.degenerate = true;
  p.direction = std::cos(prob.alpha) > 0.0 ? 1.0 : -1.0;
  const double radius = std::sqrt(2.0 * prob.mu * (1.0 - prob.mu));
  p.vc = radius / prob.mu;
  p.tf = prob.mu * prob.r / radius;
  p.m = 1.0;
  p.cc = prob.mu * (1.0 - prob.mu) + 0.5 * prob.mu * prob.mu * p.vc * p.vc;
  p.kc = p.cc / (p.vc * prob.mu);
  return p;
}

}  // namespace

FixedVParams fixedv_derive_params(double m, double tf, double vc, double mu,
                                 bool mirrored) {
  if (!(m > 0.5 + 1e-9) || !(m < 1.0 - 1e-9)) {
    throw std::domain_error("fixedv: m must lie in (0.5, 1)");
  }
  if (!(tf > 0.0) || !(vc > 0.0)) {
    throw std::domain_error("fixedv: tf and vc must be positive");
  }
  FixedVParams p;
  p.mu = mu;
  p.tf = tf;
  p.vc = vc;
  p.m = m;
  p.mirrored = mirrored;
  p.cc = mu * (1.0 - mu) + 0.5 * mu * mu * vc * vc;
  p.kc = p.cc / (vc * mu * (2.0 * m - 1.0));
  p.lambda_cap = tf * std::sqrt(vc * p.kc / mu);
  p.eta = ellip_k(m) - p.lambda_cap;
  const double a0 = std::asin(std::sqrt(m) * jacobi(p.eta, m).sn);
  p.c_theta = -2.0 * a0;
  const double c2a0 = std::cos(2.0 * a0), s2a0 = std::sin(2.0 * a0);
  p.cx = -tf * vc * (c2a0 * prim_p(p, p.eta, 0.0) - s2a0 * prim_c(p, p.eta));
  p.cy = -tf * vc * (-s2a0 * prim_p(p, p.eta, 0.0) - c2a0 * prim_c(p, p.eta));
  p.c_zeta5 = -zeta5_raw(p, p.eta, 0.0);
  return p;
}

State fixedv_eval_state(const FixedVParams& p, double tau) {
  if (!(tau >= 0.0) || !(tau <= 1.0)) {
    throw std::domain_error("fixedv: tau must lie in [0, 1]");
  }
  if (p.degenerate) {
    return {p.direction * p.vc * p.tf * tau, 0.0, 0.0};
  }
  const double u = p.lambda_cap * tau + p.eta;
  const double a0 = -0.5 * p.c_theta;
  const double c2a0 = std::cos(2.0 * a0), s2a0 = std::sin(2.0 * a0);
  const double pp = prim_p(p, u, tau), pc = prim_c(p, u);
  const double x = p.tf * p.vc * (c2a0 * pp - s2a0 * pc) + p.cx;
  const double y = p.tf * p.vc * (-s2a0 * pp - c2a0 * pc) + p.cy;
  const double theta =
      2.0 * std::asin(std::sqrt(p.m) * jacobi(u, p.m).sn) + p.c_theta;
  const double mir = p.mirrored ? -1.0 : 1.0;
  return {x, mir * y, mir * theta};
}

Control fixedv_eval_control(const FixedVParams& p, double tau) {
  if (p.degenerate) {
    return {p.direction * p.vc, 0.0};
  }
  const double u = p.lambda_cap * tau + p.eta;
  const double mir = p.mirrored ? -1.0 : 1.0;
  return {p.vc, mir * omega_amp(p) * jacobi(u, p.m).cn};
}

std::array<double, 4> fixedv_eval_costates(const FixedVParams& p, double tau) {
  if (p.degenerate) {
    return {-p.cc / (p.mu * p.vc), 0.0, 0.0, 0.0};
  }
  const double u = p.lambda_cap * tau + p.eta;
  const EllipticTriple t = jacobi(u, p.m);
  const double mir = p.mirrored ? -1.0 : 1.0;
  const double z1 = p.kc * (1.0 - 2.0 * p.m * t.sn * t.sn);
  const double z2 = 2.0 * std::sqrt(p.m) * p.kc * t.sn * t.dn;
  const double z3 = -omega_amp(p) * p.mu * t.cn;
  const double z5 = zeta5_raw(p, u, tau) + p.c_zeta5;
  return {z1, mir * z2, mir * z3, z5};
}

std::array<double, 3> fixedv_residual3(double m, double tf, double vc,
                                       const Problem& prob) {
  const bool mirrored = prob.yf() < 0.0;
  const FixedVParams p = fixedv_derive_params(m, tf, vc, prob.mu, mirrored);
  const State s = fixedv_eval_state(p, 1.0);
  // zeta5 periodicity: zeta5(1) = zeta5(0).
  const double r3 =
      -tf * (prob.mu * vc + p.kc) +
      2.0 * p.kc * tf / p.lambda_cap *
          ((ellip_k(m) - ellip_e_complete(m)) -
           (p.eta - jacobi_epsilon(p.eta, m)));
  return {s.x - prob.xf(), s.y - prob.yf(), r3};
}

std::array<double, 3> fixedv_default_guess(const Problem& prob) {
  const double radius = std::sqrt(2.0 * prob.mu * (1.0 - prob.mu));
  return {0.75, prob.mu * prob.r / radius, radius / prob.mu};
}

std::pair<FixedVParams, SolveReport> fixedv_solve(const Problem& prob,
                                                  std::array<double, 3> guess,
                                                  std::uint64_t seed,
                                                  int n_starts) {
  if (std::abs(std::sin(prob.alpha)) <= kDegenerateSinTol) {
    SolveReport rep;
    rep.converged = true;
    rep.multistart_attempts = 1;
    const FixedVParams p = degenerate_params(prob);
    rep.root = {p.m, p.tf, p.vc};
    rep.guess_used = rep.root;
    return {p, rep};
  }
  if (guess[0] == 0.0 && guess[1] == 0.0 && guess[2] == 0.0) {
    guess = fixedv_default_guess(prob);
  }
  const Box box{{0.5 + 1e-6, 1e-3, 1e-3}, {1.0 - 1e-6, 100.0, 100.0}};
  auto fn = [&prob](const std::vector<double>& x) {
    const std::array<double, 3> r =
        fixedv_residual3(x[0], x[1], x[2], prob);
    return std::vector<double>{r[0], r[1], r[2]};
  };
  const SolveReport rep =
      multistart(fn, {guess[0], guess[1], guess[2]}, box, n_starts, seed);
  if (!rep.converged) {
    return {FixedVParams{}, rep};
  }
  return {fixedv_derive_params(rep.root[0], rep.root[1], rep.root[2], prob.mu,
                               prob.yf() < 0.0),
          rep};
}

}  // namespace etoc
