#pragma once

#include <array>
#include <span>
#include <vector>

namespace etoc {

inline constexpr double kMuMin = 1e-3;

enum class Formulation { Form1, Form2, FixedV };

struct State {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct Control {
  double v = 0.0;
  double omega = 0.0;
};

/// A planning request.  The target is held in canonical polar form
/// (r, alpha); Cartesian input is converted on construction.
struct Problem {
  double mu;
  double r;
  double alpha;  // radians
  Formulation formulation = Formulation::Form1;

  static Problem from_cartesian(double mu, double xf, double yf,
                                Formulation f = Formulation::Form1);
  static Problem from_polar(double mu, double r, double alpha,
                            Formulation f = Formulation::Form1);

  double xf() const;
  double yf() const;
};

/// One sampled point of a trajectory in normalized time.
struct TrajectorySample {
  double tau;
  State state;
  Control control;
  std::vector<double> costates;
  double hamiltonian;
};

/// Kinematics right-hand side in tau-time: (Tf v cos, Tf v sin, Tf w).
State kinematics_rhs(const State& s, const Control& c, double tf);

/// Hamiltonian of the first formulation.
double hamiltonian(const State& s, const Control& c,
                   const std::array<double, 3>& lambdas, double tf, double mu);

/// Composite Simpson quadrature of the running cost over equispaced
/// control samples on [0, 1].
double cost_quadrature(std::span<const Control> controls, double tf, double mu);

/// Radius of the optimal-control circle, sqrt(2 mu (1 - mu)) / mu.
double control_radius(double mu);

}  // namespace etoc
