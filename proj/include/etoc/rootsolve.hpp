#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace etoc {

using ResidualFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

/// Per-coordinate bounds; the iterate is projected back into the box.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_residual_norm = 0.0;
  std::vector<double> guess_used;
  std::vector<double> root;
  int multistart_attempts = 0;
  double wall_time = 0.0;  // seconds, reported only
};

/// Damped Newton with a forward-difference Jacobian (relative step 1e-7),
/// halving line search (<= 30 steps) and box projection.  Converged iff
/// the residual infinity norm drops below `tol` within `max_iter`
/// iterations.  Never throws for numerical failure: a NaN residual or
/// exhausted iteration budget yields converged = false.
SolveReport solve_system(const ResidualFn& fn, const std::vector<double>& guess,
                         const Box& box, double tol = 1e-10,
                         int max_iter = 100);

/// Deterministic multistart: the first start is `center` itself, later
/// starts multiply each coordinate by a log-uniform factor in [0.5, 1.5]
/// drawn from mt19937_64(seed).  Returns the first converged report (in
/// start order), else the failure report with the smallest residual.
SolveReport multistart(const ResidualFn& fn, const std::vector<double>& center,
                       const Box& box, int n_starts, std::uint64_t seed,
                       double tol = 1e-10);

/// Multistart that runs every start and, among the converged roots, keeps
/// the one `prefer(candidate, incumbent)` ranks first.  Used when several
/// distinct roots exist and the cheapest one is wanted.
SolveReport multistart_best(
    const ResidualFn& fn, const std::vector<double>& center, const Box& box,
    int n_starts, std::uint64_t seed,
    const std::function<bool(const std::vector<double>&,
                             const std::vector<double>&)>& prefer,
    double tol = 1e-10);

}  // namespace etoc
