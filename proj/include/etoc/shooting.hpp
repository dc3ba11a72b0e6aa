#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "etoc/model.hpp"
#include "etoc/rootsolve.hpp"

namespace etoc {

/// One sample of the indirect-shooting integration; lambda1, lambda2 and
/// tf are constants of the shot and are not repeated per sample.
struct ShootingSample {
  double tau;
  State state;
  Control control;
  double lambda3;
  double hamiltonian;
};

/// Fixed-step classical RK4 on tau in [0, 1] of (x, y, theta, lambda3)
/// with the controls eliminated: v = (-c1 cos(theta) - c2 sin(theta))/mu,
/// omega = -lambda3/mu.  Throws std::runtime_error naming the failing tau
/// if the state leaves the finite range mid-integration.
std::vector<ShootingSample> rk4_rollout(double c1, double c2, double lambda3_0,
                                        double tf, double mu, int n_steps);

/// (x(1) - xf, y(1) - yf, lambda3(1), H(0)): terminal position mismatch,
/// free-heading transversality, and the free-final-time condition.
std::array<double, 4> shoot_residual(double c1, double c2, double lambda3_0,
                                     double tf, const Problem& prob,
                                     int n_steps = 10000);

/// Roots the 4-unknown shooting system (c1, c2, lambda3(0), tf).
std::pair<std::array<double, 4>, SolveReport> solve_shooting(
    const Problem& prob, std::array<double, 4> guess, int n_steps = 10000,
    double tol = 1e-10, int n_starts = 1, std::uint64_t seed = 42);

/// RK4 rollout of the kinematics alone under an arbitrary control signal;
/// used to replay closed-form controls as an independent endpoint oracle.
State replay_controls(const std::function<Control(double)>& control, double tf,
                      int n_steps);

}  // namespace etoc
