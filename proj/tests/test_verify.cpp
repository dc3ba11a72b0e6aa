#include <doctest.h>

#include <cmath>

#include "etoc/verify.hpp"

using namespace etoc;

namespace {
const double kDeg = std::acos(-1.0) / 180.0;
}

TEST_CASE("form1 reference solution passes every check") {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);
  const auto [p, rep] = form1_solve(prob);
  REQUIRE(rep.converged);
  const VerificationReport v = check_all(p, prob);
  for (const CheckResult& c : v.checks) {
    INFO(c.name, " violation=", c.max_violation, " tol=", c.tolerance);
    CHECK(c.pass);
  }
  CHECK(v.overall);
}

TEST_CASE("form2 and fixedv solutions pass every check") {
  const Problem prob = Problem::from_polar(0.5, 1.0, 55.0 * kDeg);
  const auto [p2, rep2] = form2_solve(prob);
  REQUIRE(rep2.converged);
  const VerificationReport v2 = check_all(p2, prob);
  for (const CheckResult& c : v2.checks) {
    INFO(c.name, " violation=", c.max_violation, " tol=", c.tolerance);
    CHECK(c.pass);
  }
  const auto [pf, repf] = fixedv_solve(prob);
  REQUIRE(repf.converged);
  const VerificationReport vf = check_all(pf, prob);
  for (const CheckResult& c : vf.checks) {
    INFO(c.name, " violation=", c.max_violation, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

TEST_CASE("degenerate solution passes trivially") {
  const Problem prob = Problem::from_cartesian(0.5, 1.0, 0.0);
  const auto [p1, r1] = form1_solve(prob);
  REQUIRE(r1.converged);
  CHECK(check_all(p1, prob).overall);
  const auto [p2, r2] = form2_solve(prob);
  REQUIRE(r2.converged);
  CHECK(check_all(p2, prob).overall);
  const auto [pf, rf] = fixedv_solve(prob);
  REQUIRE(rf.converged);
  CHECK(check_all(pf, prob).overall);
}

TEST_CASE("corrupted Q keeps structural checks but fails the terminal one") {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);
  const auto [p, rep] = form1_solve(prob);
  REQUIRE(rep.converged);
  const Form1Params bad =
      form1_derive_params(p.q + 1e-3, p.tf, p.mu, p.n, p.mirror);
  const VerificationReport v = check_all(bad, prob);
  CHECK(!v.overall);
  for (const CheckResult& c : v.checks) {
    if (c.name == "control_circle") CHECK(c.pass);
    if (c.name == "terminal_position") CHECK(!c.pass);
  }
}

TEST_CASE("cross_check agreement on reference and degenerate targets") {
  const VerificationReport a =
      cross_check(Problem::from_polar(0.5, 1.0, 30.0 * kDeg));
  for (const CheckResult& c : a.checks) {
    INFO(c.name, " violation=", c.max_violation, " tol=", c.tolerance);
    CHECK(c.pass);
  }
  CHECK(cross_check(Problem::from_cartesian(0.5, 1.0, 0.0)).overall);
}
