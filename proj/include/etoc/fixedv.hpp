#pragma once

#include <array>
#include <utility>

#include "etoc/model.hpp"
#include "etoc/rootsolve.hpp"

namespace etoc {

/// Free constants of the constant-linear-velocity closed form.
///
/// cc = mu (1 - mu) + mu^2 vc^2 / 2, kc = cc / (vc mu (2m - 1)),
/// lambda_cap^2 = vc tf^2 kc / mu, eta = K(m) - lambda_cap.
/// `mirrored` reflects the trajectory about the x axis for targets with
/// y_f < 0; `degenerate` marks the straight-line limit.
struct FixedVParams {
  double mu = 0.5;
  double tf = 1.0;
  double vc = 1.0;
  double m = 0.75;
  double cc = 0.0;
  double kc = 0.0;
  double lambda_cap = 0.0;
  double eta = 0.0;
  double c_theta = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double c_zeta5 = 0.0;
  bool mirrored = false;
  bool degenerate = false;
  double direction = 1.0;
};

FixedVParams fixedv_derive_params(double m, double tf, double vc, double mu,
                                 bool mirrored = false);

State fixedv_eval_state(const FixedVParams& p, double tau);
Control fixedv_eval_control(const FixedVParams& p, double tau);
std::array<double, 4> fixedv_eval_costates(const FixedVParams& p, double tau);

/// (x(1) - xf, y(1) - yf, zeta5(1) - zeta5(0)).
std::array<double, 3> fixedv_residual3(double m, double tf, double vc,
                                       const Problem& prob);

std::pair<FixedVParams, SolveReport> fixedv_solve(
    const Problem& prob, std::array<double, 3> guess = {0.0, 0.0, 0.0},
    std::uint64_t seed = 42, int n_starts = 64);

std::array<double, 3> fixedv_default_guess(const Problem& prob);

}  // namespace etoc
