#pragma once

#include <string>
#include <vector>

#include "etoc/fixedv.hpp"
#include "etoc/form1.hpp"
#include "etoc/form2.hpp"
#include "etoc/model.hpp"

namespace etoc {

struct CheckResult {
  std::string name;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool overall = false;

  void add(std::string name, double violation, double tol);
  void finalize();
};

/// Runs every applicable invariant check of the given solution over
/// n_samples equispaced tau points (endpoints always included).
VerificationReport check_all(const Form1Params& p, const Problem& prob,
                             int n_samples = 101);
VerificationReport check_all(const Form2Params& p, const Problem& prob,
                             int n_samples = 101);
VerificationReport check_all(const FixedVParams& p, const Problem& prob,
                             int n_samples = 101);

/// Solves the problem independently with form1 and form2 and checks that
/// final time, states and controls agree pointwise; both control signals
/// are additionally replayed through RK4 and must land on the target.
VerificationReport cross_check(const Problem& prob, std::uint64_t seed = 42);

}  // namespace etoc
