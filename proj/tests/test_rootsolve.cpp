#include <doctest.h>

#include <cmath>

#include "etoc/rootsolve.hpp"

using namespace etoc;

TEST_CASE("scalar quadratic root") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] * x[0] - 4.0};
  };
  const SolveReport r = solve_system(fn, {3.0}, {{-10.0}, {10.0}});
  CHECK(r.converged);
  CHECK(r.root[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.final_residual_norm < 1e-10);
}

TEST_CASE("linear 2x2 system in one Newton step") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] + x[1] - 3.0, x[0] - x[1] - 1.0};
  };
  const SolveReport r = solve_system(fn, {0.0, 0.0}, {{-10, -10}, {10, 10}});
  CHECK(r.converged);
  CHECK(r.root[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.root[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.iterations <= 3);
}

TEST_CASE("NaN residual yields a failure report, not a throw") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{std::sqrt(x[0]) - 2.0};  // NaN for x < 0
  };
  const SolveReport r = solve_system(fn, {-1.0}, {{-5.0}, {-0.5}});
  CHECK(!r.converged);
}

TEST_CASE("box projection keeps iterates feasible") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] - 7.0};
  };
  const SolveReport r = solve_system(fn, {1.0}, {{0.0}, {5.0}});
  CHECK(!r.converged);
  CHECK(r.root[0] <= 5.0 + 1e-15);
}

TEST_CASE("multistart determinism and n_starts=1 equivalence") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{std::cos(x[0]) - x[0]};
  };
  const Box box{{-4.0}, {4.0}};
  const SolveReport a = multistart(fn, {1.0}, box, 8, 123);
  const SolveReport b = multistart(fn, {1.0}, box, 8, 123);
  CHECK(a.converged);
  CHECK(a.root[0] == b.root[0]);  // bitwise determinism
  const SolveReport c = multistart(fn, {1.0}, box, 1, 99);
  const SolveReport d = solve_system(fn, {1.0}, box);
  CHECK(c.root[0] == d.root[0]);
}

TEST_CASE("multistart escapes a bad center") {
  // Root at x = 2; center put in a flat-ish far region.
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{std::atan(x[0] - 2.0)};
  };
  const SolveReport r = multistart(fn, {50.0}, {{-100.0}, {100.0}}, 64, 42);
  CHECK(r.converged);
  CHECK(r.root[0] == doctest::Approx(2.0).epsilon(1e-8));
}
