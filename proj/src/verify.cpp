#include "etoc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etoc/shooting.hpp"

namespace etoc {

namespace {

constexpr double kFdH = 1e-6;

std::vector<double> tau_grid(int n_samples) {
  std::vector<double> taus(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    taus[i] = static_cast<double>(i) / (n_samples - 1);
  }
  return taus;
}

bool fd_interior(double tau) { return tau >= 2.0 * kFdH && tau <= 1.0 - 2.0 * kFdH; }

// Central-difference kinematics residual of any closed-form evaluator.
template <typename StateFn, typename ControlFn>
double kinematics_fd_violation(const StateFn& state, const ControlFn& control,
                               double tf, const std::vector<double>& taus) {
  double worst = 0.0;
  for (double tau : taus) {
    if (!fd_interior(tau)) continue;
    const State sp = state(tau + kFdH), sm = state(tau - kFdH);
    const State rhs = kinematics_rhs(state(tau), control(tau), tf);
    worst = std::max({worst,
                      std::abs((sp.x - sm.x) / (2.0 * kFdH) - rhs.x),
                      std::abs((sp.y - sm.y) / (2.0 * kFdH) - rhs.y),
                      std::abs((sp.theta - sm.theta) / (2.0 * kFdH) - rhs.theta)});
  }
  return worst;
}

template <typename ControlFn>
double replay_violation(const ControlFn& control, double tf,
                        const Problem& prob, int n_steps = 10000) {
  const State end = replay_controls(control, tf, n_steps);
  return std::max(std::abs(end.x - prob.xf()), std::abs(end.y - prob.yf()));
}

template <typename ControlFn>
double cost_identity_violation(const ControlFn& control, double tf, double mu,
                               int n_samples) {
  std::vector<Control> cs;
  cs.reserve(n_samples);
  for (double tau : tau_grid(n_samples)) cs.push_back(control(tau));
  return std::abs(cost_quadrature(cs, tf, mu) - 2.0 * tf * (1.0 - mu));
}

}  // namespace

void VerificationReport::add(std::string name, double violation, double tol) {
  checks.push_back({std::move(name), violation, tol, violation <= tol});
}

void VerificationReport::finalize() {
  overall = std::all_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.pass; });
}

VerificationReport check_all(const Form1Params& p, const Problem& prob,
                             int n_samples) {
  VerificationReport rep;
  const std::vector<double> taus = tau_grid(n_samples);
  auto state = [&](double tau) { return form1_eval_state(p, tau); };
  auto control = [&](double tau) { return form1_eval_control(p, tau); };

  double h_max = 0.0, circle_max = 0.0, l4_max = 0.0, costate_fd = 0.0;
  const double circle_target = 2.0 * (1.0 - p.mu) / p.mu;
  for (double tau : taus) {
    const State s = state(tau);
    const Control c = control(tau);
    const std::array<double, 4> lam = form1_eval_costates(p, tau);
    h_max = std::max(h_max, std::abs(hamiltonian(s, c, {lam[0], lam[1], lam[2]},
                                                 p.tf, p.mu)));
    circle_max = std::max(
        circle_max, std::abs(c.v * c.v + c.omega * c.omega - circle_target));
    l4_max = std::max(l4_max, std::abs(lam[3]));
    if (fd_interior(tau)) {
      const double l3p = form1_eval_costates(p, tau + kFdH)[2];
      const double l3m = form1_eval_costates(p, tau - kFdH)[2];
      const double rhs = p.tf * c.v * (lam[0] * std::sin(s.theta) -
                                       lam[1] * std::cos(s.theta));
      costate_fd =
          std::max(costate_fd, std::abs((l3p - l3m) / (2.0 * kFdH) - rhs));
    }
  }
  rep.add("hamiltonian_zero", h_max, 1e-8);
  rep.add("control_circle", circle_max, 1e-10);
  rep.add("lambda4_zero", l4_max, 1e-10);
  rep.add("costate_ode_fd", costate_fd, 1e-6);
  rep.add("kinematics_ode_fd", kinematics_fd_violation(state, control, p.tf, taus),
          1e-6);
  rep.add("transversality_lambda3", std::abs(form1_eval_costates(p, 1.0)[2]),
          1e-10);
  const State end = state(1.0);
  rep.add("terminal_position",
          std::max(std::abs(end.x - prob.xf()), std::abs(end.y - prob.yf())),
          1e-8);
  rep.add("cost_identity", cost_identity_violation(control, p.tf, p.mu, 2001),
          1e-6);
  rep.add("rk4_replay_endpoint", replay_violation(control, p.tf, prob), 1e-6);
  rep.finalize();
  return rep;
}

VerificationReport check_all(const Form2Params& p, const Problem& prob,
                             int n_samples) {
  VerificationReport rep;
  const std::vector<double> taus = tau_grid(n_samples);
  auto state = [&](double tau) { return form2_eval_state(p, tau); };
  auto control = [&](double tau) { return form2_eval_control(p, tau); };

  double cyl1_max = 0.0, cyl2_max = 0.0, circle_max = 0.0, zeta4_max = 0.0,
         zeta_fd = 0.0;
  const double k2 = 2.0 * p.mu * (1.0 - p.mu);
  const double circle_target = 2.0 * (1.0 - p.mu) / p.mu;
  for (double tau : taus) {
    const std::array<double, 3> z = form2_eval_costates(p, tau);
    const Control c = control(tau);
    cyl1_max = std::max(cyl1_max, std::abs(z[0] * z[0] + z[2] * z[2] - k2));
    cyl2_max = std::max(cyl2_max,
                        std::abs(z[0] * z[0] + z[1] * z[1] - p.eps * p.eps));
    circle_max = std::max(
        circle_max, std::abs(c.v * c.v + c.omega * c.omega - circle_target));
    // dzeta4/dtau = -(1-mu) + mu (v^2 + omega^2)/2 once the stationarity
    // relations are substituted; zero exactly on the control circle.
    zeta4_max = std::max(
        zeta4_max,
        std::abs(-(1.0 - p.mu) + 0.5 * p.mu * (c.v * c.v + c.omega * c.omega)));
    if (fd_interior(tau) && !p.degenerate) {
      const std::array<double, 3> zp = form2_eval_costates(p, tau + kFdH);
      const std::array<double, 3> zm = form2_eval_costates(p, tau - kFdH);
      const double f = p.tf / p.mu;
      zeta_fd = std::max(
          {zeta_fd,
           std::abs((zp[0] - zm[0]) / (2.0 * kFdH) - f * z[1] * z[2]),
           std::abs((zp[1] - zm[1]) / (2.0 * kFdH) + f * z[0] * z[2]),
           std::abs((zp[2] - zm[2]) / (2.0 * kFdH) + f * z[0] * z[1])});
    }
  }
  rep.add("cylinder_control", cyl1_max, 1e-10);
  rep.add("cylinder_eps", cyl2_max, 1e-10);
  rep.add("control_circle", circle_max, 1e-10);
  rep.add("zeta4_slope_zero", zeta4_max, 1e-10);
  rep.add("zeta_ode_fd", zeta_fd, 1e-6);
  rep.add("kinematics_ode_fd", kinematics_fd_violation(state, control, p.tf, taus),
          1e-6);
  rep.add("transversality_zeta3", std::abs(form2_eval_costates(p, 1.0)[2]),
          1e-10);
  const State end = state(1.0);
  rep.add("terminal_position",
          std::max(std::abs(end.x - prob.xf()), std::abs(end.y - prob.yf())),
          1e-8);
  rep.add("cost_identity", cost_identity_violation(control, p.tf, p.mu, 2001),
          1e-6);
  rep.add("rk4_replay_endpoint", replay_violation(control, p.tf, prob), 1e-6);
  rep.finalize();
  return rep;
}

VerificationReport check_all(const FixedVParams& p, const Problem& prob,
                             int n_samples) {
  VerificationReport rep;
  const std::vector<double> taus = tau_grid(n_samples);
  auto state = [&](double tau) { return fixedv_eval_state(p, tau); };
  auto control = [&](double tau) { return fixedv_eval_control(p, tau); };

  double cyl_max = 0.0, par_max = 0.0, v_dev = 0.0, zeta5_fd = 0.0;
  for (double tau : taus) {
    const std::array<double, 4> z = fixedv_eval_costates(p, tau);
    const Control c = control(tau);
    cyl_max =
        std::max(cyl_max, std::abs(z[0] * z[0] + z[1] * z[1] - p.kc * p.kc));
    par_max = std::max(
        par_max, std::abs(0.5 * z[2] * z[2] - z[0] * p.mu * p.vc - p.cc));
    v_dev = std::max(v_dev, std::abs(c.v - (p.degenerate ? p.direction : 1.0) *
                                               p.vc));
    if (fd_interior(tau)) {
      const double z5p = fixedv_eval_costates(p, tau + kFdH)[3];
      const double z5m = fixedv_eval_costates(p, tau - kFdH)[3];
      const double rhs = -p.tf * p.mu * p.vc - p.tf * z[0];
      zeta5_fd =
          std::max(zeta5_fd, std::abs((z5p - z5m) / (2.0 * kFdH) - rhs));
    }
  }
  rep.add("cylinder", cyl_max, 1e-10);
  rep.add("parabola", par_max, 1e-10);
  rep.add("v_constant", v_dev, 0.0);
  rep.add("zeta5_ode_fd", zeta5_fd, 1e-6);
  rep.add("kinematics_ode_fd", kinematics_fd_violation(state, control, p.tf, taus),
          1e-6);
  rep.add("transversality_zeta3", std::abs(fixedv_eval_costates(p, 1.0)[2]),
          1e-10);
  rep.add("zeta1_terminal",
          std::abs(fixedv_eval_costates(p, 1.0)[0] + p.cc / (p.mu * p.vc)),
          1e-10);
  rep.add("zeta5_periodicity",
          std::abs(fixedv_eval_costates(p, 1.0)[3] -
                   fixedv_eval_costates(p, 0.0)[3]),
          1e-8);
  const State end = state(1.0);
  rep.add("terminal_position",
          std::max(std::abs(end.x - prob.xf()), std::abs(end.y - prob.yf())),
          1e-8);
  rep.add("rk4_replay_endpoint", replay_violation(control, p.tf, prob), 1e-6);
  rep.finalize();
  return rep;
}

VerificationReport cross_check(const Problem& prob, std::uint64_t seed) {
  VerificationReport rep;
  const auto [p1, rep1] = form1_solve(prob, {0.0, 0.0}, seed);
  const auto [p2, rep2] = form2_solve(prob, {0.0, 0.0}, seed);
  if (!rep1.converged || !rep2.converged) {
    throw std::runtime_error("cross_check: a formulation failed to converge");
  }
  rep.add("tf_agreement", std::abs(p1.tf - p2.tf), 1e-6);

  double state_dev = 0.0, control_dev = 0.0;
  for (double tau : tau_grid(101)) {
    const State s1 = form1_eval_state(p1, tau);
    const State s2 = form2_eval_state(p2, tau);
    const Control c1 = form1_eval_control(p1, tau);
    const Control c2 = form2_eval_control(p2, tau);
    state_dev = std::max({state_dev, std::abs(s1.x - s2.x),
                          std::abs(s1.y - s2.y), std::abs(s1.theta - s2.theta)});
    control_dev = std::max({control_dev, std::abs(c1.v - c2.v),
                            std::abs(c1.omega - c2.omega)});
  }
  rep.add("state_agreement", state_dev, 1e-6);
  rep.add("control_agreement", control_dev, 1e-6);
  rep.add("form1_replay_endpoint",
          replay_violation([&](double tau) { return form1_eval_control(p1, tau); },
                           p1.tf, prob),
          1e-6);
  rep.add("form2_replay_endpoint",
          replay_violation([&](double tau) { return form2_eval_control(p2, tau); },
                           p2.tf, prob),
          1e-6);
  rep.finalize();
  return rep;
}

}  // namespace etoc
