#include "etoc/form2.hpp"

#include <cmath>
#include <stdexcept>

#include "etoc/elliptic.hpp"

namespace etoc {

namespace {

constexpr double kDegenerateSinTol = 1e-9;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Turn-direction factor in the theta closed form.
double s_factor(const Form2Params& p) { return -sign_of(p.k * p.eps); }

double a_of(const Form2Params& p, double u) {
  return std::asin(std::sqrt(p.m) * jacobi(u, p.m).sn);
}

double x_raw(const Form2Params& p, double u) {
  const double a0 = -s_factor(p) * p.c_theta;
  const double g = p.k / p.eps;
  return g * std::cos(a0) * jacobi(u, p.m).cn -
         g / std::sqrt(p.m) * std::sin(a0) * (u - jacobi_epsilon(u, p.m));
}

double y_raw(const Form2Params& p, double u) {
  const double a0 = -s_factor(p) * p.c_theta;
  return std::cos(a0) * (u - jacobi_epsilon(u, p.m)) +
         std::sqrt(p.m) * std::sin(a0) * jacobi(u, p.m).cn;
}

Form2Params degenerate_params(const Problem& prob) {
  Form2Params p;
  p.mu = prob.mu;
  p.degenerate = true;
  p.direction = std::cos(prob.alpha) > 0.0 ? 1.0 : -1.0;
  const double radius = std::sqrt(2.0 * prob.mu * (1.0 - prob.mu));
  p.tf = prob.mu * prob.r / radius;
  p.k = -p.direction * radius;
  p.k_sign = p.k < 0.0 ? -1 : 1;
  p.eps = p.k;
  p.m = 1.0;
  return p;
}

}  // namespace

Form2Params form2_derive_params(double eps, double tf, double mu, int k_sign) {
  if (!(tf > 0.0)) {
    throw std::domain_error("form2: tf must be positive");
  }
  if (k_sign != 1 && k_sign != -1) {
    throw std::domain_error("form2: k_sign must be +1 or -1");
  }
  const double k2 = 2.0 * mu * (1.0 - mu);
  if (!(eps * eps - k2 > 1e-12 * k2)) {
    throw std::domain_error(
        "form2: need eps^2 > 2 mu (1 - mu), otherwise m >= 1");
  }
  Form2Params p;
  p.mu = mu;
  p.tf = tf;
  p.eps = eps;
  p.k_sign = k_sign;
  p.k = k_sign * std::sqrt(k2);
  p.m = k2 / (eps * eps);
  p.eta = ellip_k(p.m) - tf * eps / mu;
  const double a0 = std::asin(std::sqrt(p.m) * jacobi(p.eta, p.m).sn);
  p.c_theta = -s_factor(p) * a0;
  p.cx = -x_raw(p, p.eta);
  p.cy = -y_raw(p, p.eta);
  return p;
}

State form2_eval_state(const Form2Params& p, double tau) {
  if (!(tau >= 0.0) || !(tau <= 1.0)) {
    throw std::domain_error("form2: tau must lie in [0, 1]");
  }
  if (p.degenerate) {
    const double v = -p.k / p.mu;
    return {p.tf * v * tau, 0.0, 0.0};
  }
  const double u = p.tf * p.eps / p.mu * tau + p.eta;
  return {x_raw(p, u) + p.cx, y_raw(p, u) + p.cy,
          s_factor(p) * a_of(p, u) + p.c_theta};
}

Control form2_eval_control(const Form2Params& p, double tau) {
  if (p.degenerate) {
    return {-p.k / p.mu, 0.0};
  }
  const double u = p.tf * p.eps / p.mu * tau + p.eta;
  const EllipticTriple t = jacobi(u, p.m);
  return {-p.k / p.mu * t.sn, -p.k / p.mu * t.cn};
}

std::array<double, 3> form2_eval_costates(const Form2Params& p, double tau) {
  if (p.degenerate) {
    return {p.k, 0.0, 0.0};
  }
  const double u = p.tf * p.eps / p.mu * tau + p.eta;
  const EllipticTriple t = jacobi(u, p.m);
  return {p.k * t.sn, p.eps * t.dn, p.k * t.cn};
}

std::array<double, 2> form2_residual(double eps, double tf,
                                     const Problem& prob, int k_sign) {
  const Form2Params p = form2_derive_params(eps, tf, prob.mu, k_sign);
  const State s = form2_eval_state(p, 1.0);
  return {s.x - prob.xf(), s.y - prob.yf()};
}

std::array<double, 2> form2_default_guess(const Problem& prob) {
  const double sy = prob.yf() < 0.0 ? -1.0 : 1.0;
  return {sy * std::sqrt(4.0 * prob.mu * (1.0 - prob.mu)),
          prob.mu * prob.r / std::sqrt(2.0 * prob.mu * (1.0 - prob.mu))};
}

std::pair<Form2Params, SolveReport> form2_solve(const Problem& prob,
                                                std::array<double, 2> guess,
                                                std::uint64_t seed,
                                                int n_starts) {
  if (std::abs(std::sin(prob.alpha)) <= kDegenerateSinTol) {
    SolveReport rep;
    rep.converged = true;
    rep.multistart_attempts = 1;
    const Form2Params p = degenerate_params(prob);
    rep.root = {p.eps, p.tf};
    rep.guess_used = rep.root;
    return {p, rep};
  }
  if (guess[0] == 0.0 && guess[1] == 0.0) {
    guess = form2_default_guess(prob);
  }
  const double kmag = std::sqrt(2.0 * prob.mu * (1.0 - prob.mu));
  const double eps_lo = kmag * (1.0 + 1e-6);
  const double eps_sign = sign_of(guess[0]);
  const double eps_abs = std::max(std::abs(guess[0]), eps_lo);

  Form2Params best;
  SolveReport best_rep;
  bool found = false;
  for (int k_sign : {-1, 1}) {
    for (double es : {eps_sign, -eps_sign}) {
      const Box box = es > 0.0 ? Box{{eps_lo, 1e-3}, {100.0, 100.0}}
                               : Box{{-100.0, 1e-3}, {-eps_lo, 100.0}};
      auto fn = [&prob, k_sign](const std::vector<double>& x) {
        const std::array<double, 2> r =
            form2_residual(x[0], x[1], prob, k_sign);
        return std::vector<double>{r[0], r[1]};
      };
      // Several extremal roots can coexist in one sign family (longer
      // maneuvers that loop further); cost grows with tf, so keep the
      // shortest converged root over all starts.
      const SolveReport rep = multistart_best(
          fn, {es * eps_abs, guess[1]}, box, n_starts, seed,
          [](const std::vector<double>& a, const std::vector<double>& b) {
            return a[1] < b[1];
          });
      if (!rep.converged) continue;
      // Cost is 2 tf (1 - mu) on every valid solution: shorter tf wins.
      if (!found || rep.root[1] < best_rep.root[1] - 1e-12) {
        best = form2_derive_params(rep.root[0], rep.root[1], prob.mu, k_sign);
        best_rep = rep;
        found = true;
      }
    }
    // A converged negative-K root is preferred on ties; stop early when
    // the forward family already succeeded.
    if (found && k_sign == -1) break;
  }
  if (!found) {
    SolveReport rep;
    rep.converged = false;
    return {Form2Params{}, rep};
  }
  return {best, best_rep};
}

std::array<double, 3> form2_costate_geometry(const Form2Params& p,
                                             double delta) {
  const double k2 = 2.0 * p.mu * (1.0 - p.mu);
  const double s = std::sin(delta);
  const double disc = p.eps * p.eps - k2 * s * s;
  if (disc < 0.0) {
    throw std::domain_error("form2: imaginary zeta2 at this delta");
  }
  return {std::sqrt(k2) * s, sign_of(p.eps) * std::sqrt(disc),
          p.k * std::cos(delta)};
}

}  // namespace etoc
