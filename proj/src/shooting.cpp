#include "etoc/shooting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace etoc {

namespace {

struct Ode4 {
  double x, y, theta, lambda3;
};

Ode4 operator+(const Ode4& a, const Ode4& b) {
  return {a.x + b.x, a.y + b.y, a.theta + b.theta, a.lambda3 + b.lambda3};
}

Ode4 operator*(double s, const Ode4& a) {
  return {s * a.x, s * a.y, s * a.theta, s * a.lambda3};
}

Control controls_of(const Ode4& s, double c1, double c2, double mu) {
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  return {(-c1 * ct - c2 * st) / mu, -s.lambda3 / mu};
}

Ode4 rhs(const Ode4& s, double c1, double c2, double tf, double mu) {
  const Control c = controls_of(s, c1, c2, mu);
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  return {tf * c.v * ct, tf * c.v * st, tf * c.omega,
          tf * c.v * (c1 * st - c2 * ct)};
}

double shot_hamiltonian(const Ode4& s, double c1, double c2, double tf,
                        double mu) {
  const Control c = controls_of(s, c1, c2, mu);
  // Optimal controls substituted: the costate terms collapse to
  // -mu (v^2 + omega^2).
  return tf * ((1.0 - mu) - 0.5 * mu * (c.v * c.v + c.omega * c.omega));
}

}  // namespace

std::vector<ShootingSample> rk4_rollout(double c1, double c2, double lambda3_0,
                                        double tf, double mu, int n_steps) {
  if (n_steps < 100) {
    throw std::invalid_argument("rk4_rollout: n_steps must be >= 100");
  }
  if (!(tf > 0.0)) {
    throw std::domain_error("rk4_rollout: tf must be positive");
  }
  const double h = 1.0 / n_steps;
  Ode4 s{0.0, 0.0, 0.0, lambda3_0};
  std::vector<ShootingSample> out;
  out.reserve(n_steps + 1);
  auto push = [&](double tau, const Ode4& st) {
    const Control c = controls_of(st, c1, c2, mu);
    out.push_back({tau,
                   {st.x, st.y, st.theta},
                   c,
                   st.lambda3,
                   shot_hamiltonian(st, c1, c2, tf, mu)});
  };
  push(0.0, s);
  for (int i = 0; i < n_steps; ++i) {
    const double tau = i * h;
    const Ode4 k1 = rhs(s, c1, c2, tf, mu);
    const Ode4 k2 = rhs(s + 0.5 * h * k1, c1, c2, tf, mu);
    const Ode4 k3 = rhs(s + 0.5 * h * k2, c1, c2, tf, mu);
    const Ode4 k4 = rhs(s + h * k3, c1, c2, tf, mu);
    s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.theta) ||
        !std::isfinite(s.lambda3)) {
      throw std::runtime_error("rk4_rollout: state not finite at tau=" +
                               std::to_string(tau + h));
    }
    push((i + 1) * h, s);
  }
  return out;
}

std::array<double, 4> shoot_residual(double c1, double c2, double lambda3_0,
                                     double tf, const Problem& prob,
                                     int n_steps) {
  const std::vector<ShootingSample> traj =
      rk4_rollout(c1, c2, lambda3_0, tf, prob.mu, n_steps);
  const ShootingSample& end = traj.back();
  return {end.state.x - prob.xf(), end.state.y - prob.yf(), end.lambda3,
          traj.front().hamiltonian};
}

std::pair<std::array<double, 4>, SolveReport> solve_shooting(
    const Problem& prob, std::array<double, 4> guess, int n_steps, double tol,
    int n_starts, std::uint64_t seed) {
  auto fn = [&prob, n_steps](const std::vector<double>& x) {
    const std::array<double, 4> r =
        shoot_residual(x[0], x[1], x[2], x[3], prob, n_steps);
    return std::vector<double>{r[0], r[1], r[2], r[3]};
  };
  const Box box{{-10.0, -10.0, -10.0, 1e-3}, {10.0, 10.0, 10.0, 100.0}};
  const SolveReport rep =
      multistart(fn, {guess[0], guess[1], guess[2], guess[3]}, box, n_starts,
                 seed, tol);
  std::array<double, 4> root = guess;
  if (rep.root.size() == 4) {
    root = {rep.root[0], rep.root[1], rep.root[2], rep.root[3]};
  }
  return {root, rep};
}

State replay_controls(const std::function<Control(double)>& control, double tf,
                      int n_steps) {
  const double h = 1.0 / n_steps;
  State s{0.0, 0.0, 0.0};
  for (int i = 0; i < n_steps; ++i) {
    const double tau = i * h;
    const State k1 = kinematics_rhs(s, control(tau), tf);
    auto advance = [&](const State& base, double frac, const State& k) {
      return State{base.x + frac * h * k.x, base.y + frac * h * k.y,
                   base.theta + frac * h * k.theta};
    };
    const Control cm = control(tau + 0.5 * h);
    const State k2 = kinematics_rhs(advance(s, 0.5, k1), cm, tf);
    const State k3 = kinematics_rhs(advance(s, 0.5, k2), cm, tf);
    const State k4 = kinematics_rhs(advance(s, 1.0, k3), control(tau + h), tf);
    s.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    s.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
  }
  return s;
}

}  // namespace etoc
