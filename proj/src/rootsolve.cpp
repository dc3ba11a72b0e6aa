#include "etoc/rootsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace etoc {

namespace {

double inf_norm(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

bool has_nan(const std::vector<double>& v) {
  return std::any_of(v.begin(), v.end(),
                     [](double x) { return !std::isfinite(x); });
}

void project(std::vector<double>& x, const Box& box) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], box.lo[i], box.hi[i]);
  }
}

// Solve J * dx = -r in place by Gaussian elimination with partial
// pivoting.  J is row-major n x n.  Returns false on (near) singularity.
bool linear_solve(std::vector<double>& j, std::vector<double>& rhs,
                  std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(j[row * n + col]) > std::abs(j[piv * n + col])) piv = row;
    }
    if (std::abs(j[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(j[col * n + k], j[piv * n + k]);
      }
      std::swap(rhs[col], rhs[piv]);
    }
    const double d = j[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = j[row * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) j[row * n + k] -= f * j[col * n + k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    double s = rhs[col];
    for (std::size_t k = col + 1; k < n; ++k) s -= j[col * n + k] * rhs[k];
    rhs[col] = s / j[col * n + col];
  }
  return true;
}

std::vector<double> safe_eval(const ResidualFn& fn,
                              const std::vector<double>& x) {
  try {
    return fn(x);
  } catch (const std::exception&) {
    return std::vector<double>(x.size(),
                               std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

SolveReport solve_system(const ResidualFn& fn, const std::vector<double>& guess,
                         const Box& box, double tol, int max_iter) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = guess.size();
  SolveReport rep;
  rep.guess_used = guess;

  std::vector<double> x = guess;
  project(x, box);
  std::vector<double> r = safe_eval(fn, x);
  auto finish = [&](bool ok) {
    rep.converged = ok;
    rep.root = x;
    rep.final_residual_norm = inf_norm(r);
    rep.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return rep;
  };
  if (r.size() != n || has_nan(r)) return finish(false);

  for (int it = 0; it < max_iter; ++it) {
    double rnorm = inf_norm(r);
    if (rnorm < tol) {
      rep.iterations = it;
      return finish(true);
    }
    // Forward-difference Jacobian, relative step 1e-7.
    std::vector<double> jac(n * n);
    bool jac_ok = true;
    for (std::size_t col = 0; col < n; ++col) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[col]));
      std::vector<double> xp = x;
      xp[col] += h;
      const std::vector<double> rp = safe_eval(fn, xp);
      if (has_nan(rp)) {
        jac_ok = false;
        break;
      }
      for (std::size_t row = 0; row < n; ++row) {
        jac[row * n + col] = (rp[row] - r[row]) / h;
      }
    }
    if (!jac_ok) {
      rep.iterations = it;
      return finish(false);
    }
    std::vector<double> step(r.begin(), r.end());
    for (double& s : step) s = -s;
    if (!linear_solve(jac, step, n)) {
      rep.iterations = it;
      return finish(false);
    }

    // Backtracking line search on the residual norm.
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      std::vector<double> xt = x;
      for (std::size_t i = 0; i < n; ++i) xt[i] += alpha * step[i];
      project(xt, box);
      const std::vector<double> rt = safe_eval(fn, xt);
      if (!has_nan(rt) && inf_norm(rt) < rnorm) {
        double max_dx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          max_dx = std::max(max_dx, std::abs(xt[i] - x[i]));
        }
        x = xt;
        r = rt;
        accepted = true;
        if (max_dx < 1e-14) {
          // Step stagnation: report with whatever accuracy was reached.
          rep.iterations = it + 1;
          return finish(inf_norm(r) < tol);
        }
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      rep.iterations = it + 1;
      return finish(inf_norm(r) < tol);
    }
  }
  rep.iterations = max_iter;
  return finish(inf_norm(r) < tol);
}

SolveReport multistart(const ResidualFn& fn, const std::vector<double>& center,
                       const Box& box, int n_starts, std::uint64_t seed,
                       double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(std::log(0.5), std::log(1.5));
  SolveReport best;
  bool have_best = false;
  for (int s = 0; s < n_starts; ++s) {
    std::vector<double> start = center;
    if (s > 0) {
      for (double& xi : start) xi *= std::exp(uni(rng));
    }
    SolveReport rep = solve_system(fn, start, box, tol);
    rep.multistart_attempts = s + 1;
    if (rep.converged) return rep;
    if (!have_best || rep.final_residual_norm < best.final_residual_norm) {
      best = rep;
      have_best = true;
    }
  }
  best.multistart_attempts = n_starts;
  return best;
}

SolveReport multistart_best(
    const ResidualFn& fn, const std::vector<double>& center, const Box& box,
    int n_starts, std::uint64_t seed,
    const std::function<bool(const std::vector<double>&,
                             const std::vector<double>&)>& prefer,
    double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(std::log(0.5), std::log(1.5));
  SolveReport best;
  bool have_converged = false, have_best = false;
  for (int s = 0; s < n_starts; ++s) {
    std::vector<double> start = center;
    if (s > 0) {
      for (double& xi : start) xi *= std::exp(uni(rng));
    }
    SolveReport rep = solve_system(fn, start, box, tol);
    rep.multistart_attempts = s + 1;
    if (rep.converged) {
      if (!have_converged || prefer(rep.root, best.root)) best = rep;
      have_converged = true;
      have_best = true;
    } else if (!have_converged &&
               (!have_best ||
                rep.final_residual_norm < best.final_residual_norm)) {
      best = rep;
      have_best = true;
    }
  }
  best.multistart_attempts = n_starts;
  return best;
}

}  // namespace etoc
