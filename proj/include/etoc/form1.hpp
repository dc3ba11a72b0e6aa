#pragma once

#include <array>
#include <utility>

#include "etoc/model.hpp"
#include "etoc/rootsolve.hpp"

namespace etoc {

/// Free constants of the Hamiltonian-formulation closed form.
///
/// Conventions: m = q / 2, z^2 q = 4 mu (1 - mu),
/// tf z / mu + eta = (2n + 1) K(m), phi = arcsin(sqrt(m) sn(eta, m)),
/// costates lambda1 = -z sin(phi), lambda2 = -z cos(phi).
/// `mirror` = -1 reflects the trajectory about the x axis (targets with
/// y_f < 0); `degenerate` marks the straight-line limit (target on the
/// x axis), evaluated analytically instead of through the elliptic forms.
struct Form1Params {
  double mu = 0.5;
  double tf = 1.0;
  double q = 1.0;
  int n = 0;
  double z = 0.0;
  double phi = 0.0;
  double eta = 0.0;
  double m = 0.5;
  double cx = 0.0;
  double cy = 0.0;
  double mirror = 1.0;     // +1 or -1
  bool degenerate = false;
  double direction = 1.0;  // straight-line heading sign when degenerate
};

Form1Params form1_derive_params(double q, double tf, double mu, int n,
                                double mirror = 1.0);

State form1_eval_state(const Form1Params& p, double tau);
Control form1_eval_control(const Form1Params& p, double tau);
std::array<double, 4> form1_eval_costates(const Form1Params& p, double tau);

/// (x(1) - x_f, y(1) - y_f) for the candidate (q, tf).
std::array<double, 2> form1_residual(double q, double tf, const Problem& prob,
                                     int n = 0);

std::pair<Form1Params, SolveReport> form1_solve(
    const Problem& prob, std::array<double, 2> guess = {0.0, 0.0},
    std::uint64_t seed = 42, int n_starts = 64);

/// tau* = -eta mu / (tf z); v(tau*) = 0 when tau* falls inside (0, 1).
double form1_stationary_time(const Form1Params& p);

/// tf z - mu (2n + 1) K(m): zero exactly on the eta = 0 boundary that
/// separates monotone from velocity-reversing maneuvers.
double form1_transition_condition(const Form1Params& p);

/// Default guess used when the caller passes none.
std::array<double, 2> form1_default_guess(const Problem& prob);

}  // namespace etoc
