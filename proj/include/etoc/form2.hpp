#pragma once

#include <array>
#include <utility>

#include "etoc/model.hpp"
#include "etoc/rootsolve.hpp"

namespace etoc {

/// Free constants of the variational-formulation closed form.
///
/// k = k_sign * sqrt(2 mu (1 - mu)), m = k^2 / eps^2 in (0, 1),
/// eta = K(m) - tf * eps / mu.  eps carries the turn direction: eps < 0
/// produces the mirrored (clockwise) trajectory.  `degenerate` marks the
/// straight-line limit, evaluated analytically.
struct Form2Params {
  double mu = 0.5;
  double tf = 1.0;
  double eps = 1.0;
  int k_sign = -1;
  double k = 0.0;
  double m = 0.5;
  double eta = 0.0;
  double c_theta = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  bool degenerate = false;
  double direction = 1.0;
};

Form2Params form2_derive_params(double eps, double tf, double mu, int k_sign);

State form2_eval_state(const Form2Params& p, double tau);
Control form2_eval_control(const Form2Params& p, double tau);
std::array<double, 3> form2_eval_costates(const Form2Params& p, double tau);

std::array<double, 2> form2_residual(double eps, double tf,
                                     const Problem& prob, int k_sign);

std::pair<Form2Params, SolveReport> form2_solve(
    const Problem& prob, std::array<double, 2> guess = {0.0, 0.0},
    std::uint64_t seed = 42, int n_starts = 64);

/// delta-parameterized intersection curve of the two costate cylinders:
/// (sqrt(2 mu (1-mu)) sin(delta), +-sqrt(eps^2 - 2 mu (1-mu) sin^2 delta),
///  k cos(delta)).  Throws std::domain_error when zeta2 turns imaginary.
std::array<double, 3> form2_costate_geometry(const Form2Params& p,
                                             double delta);

std::array<double, 2> form2_default_guess(const Problem& prob);

}  // namespace etoc
