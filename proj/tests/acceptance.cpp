// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is independent; all are always run.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "etoc/elliptic.hpp"
#include "etoc/fixedv.hpp"
#include "etoc/form1.hpp"
#include "etoc/form2.hpp"
#include "etoc/model.hpp"
#include "etoc/shooting.hpp"
#include "etoc/verify.hpp"
#include "oracles.hpp"

using namespace etoc;

namespace {

const double kDeg = std::acos(-1.0) / 180.0;
int g_failures = 0;

void report(int idx, const char* what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx,
              what, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// Largest violation among the named checks of a verification report.
double named_violation(const VerificationReport& v,
                       const std::vector<std::string>& names) {
  double worst = 0.0;
  for (const CheckResult& c : v.checks) {
    for (const std::string& n : names) {
      if (c.name == n) worst = std::max(worst, c.max_violation);
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
void criterion1() {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_q = 0.0, worst_tf = 0.0;
  for (double q0 : {1.19, 1.20, 1.21, 1.22, 1.23}) {
    for (double tf0 : {0.92, 0.93, 0.94, 0.95, 0.96}) {
      const auto [p, rep] = form1_solve(prob, {q0, tf0}, 42, 1);
      ok = ok && rep.converged;
      worst_q = std::max(worst_q, std::abs(p.q - 1.21));
      worst_tf = std::max(worst_tf, std::abs(p.tf - 0.94));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ok = ok && worst_q <= 0.01 && worst_tf <= 0.01 && secs < 5.0;
  report(1, "reference NLP grid converges to (1.21, 0.94)", ok,
         "max dev q " + fmt(worst_q) + ", tf " + fmt(worst_tf) + ", " +
             fmt(secs) + " s");
}

void criterion2() {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);
  const auto [root, rep] =
      solve_shooting(prob, {-0.17, -0.89, -0.68, 0.94}, 10000, 1e-10);
  const auto [p, prep] = form1_solve(prob);
  const double z = std::hypot(root[0], root[1]);
  const bool ok = rep.converged && prep.converged &&
                  rep.final_residual_norm < 1e-8 &&
                  std::abs(root[0] + 0.17) <= 0.01 &&
                  std::abs(root[1] + 0.89) <= 0.01 &&
                  std::abs(root[2] + 0.68) <= 0.01 &&
                  std::abs(root[3] - 0.94) <= 0.01 &&
                  std::abs(z - p.z) <= 0.01;
  report(2, "reference shooting solve matches the printed unknowns", ok,
         "residual " + fmt(rep.final_residual_norm) + ", |z - z_nlp| " +
             fmt(std::abs(z - p.z)));
}

void criterion3() {
  const Problem prob = Problem::from_cartesian(0.5, 1.0, 0.0);
  const double v_exact = std::sqrt(2.0);
  const double tf_exact = 0.5 / std::sqrt(0.5);  // 0.70711 to 5 decimals
  double worst_v = 0.0, worst_tf = 0.0, worst_omega = 0.0;
  bool converged = true;

  auto scan = [&](auto params, const SolveReport& rep, double v_like) {
    converged = converged && rep.converged;
    worst_v = std::max(worst_v, std::abs(v_like - v_exact));
    worst_tf = std::max(worst_tf, std::abs(params.tf - tf_exact));
  };
  const auto [p1, r1] = form1_solve(prob);
  scan(p1, r1, form1_eval_control(p1, 0.5).v);
  const auto [p2, r2] = form2_solve(prob);
  scan(p2, r2, form2_eval_control(p2, 0.5).v);
  const auto [pf, rf] = fixedv_solve(prob);
  scan(pf, rf, pf.vc);
  for (int i = 0; i <= 100; ++i) {
    const double tau = i / 100.0;
    worst_omega = std::max({worst_omega,
                            std::abs(form1_eval_control(p1, tau).omega),
                            std::abs(form2_eval_control(p2, tau).omega),
                            std::abs(fixedv_eval_control(pf, tau).omega)});
  }
  const bool ok = converged && worst_v <= 1e-6 && worst_tf <= 1e-6 &&
                  worst_omega == 0.0;
  report(3, "degenerate straight line: v = sqrt(2), tf = 0.70711, omega = 0",
         ok,
         "dev v " + fmt(worst_v) + ", tf " + fmt(worst_tf) + ", omega " +
             fmt(worst_omega));
}

struct SweepData {
  std::vector<double> alphas;
  std::vector<Form1Params> p1;
  std::vector<Form2Params> p2;
  std::vector<FixedVParams> pf;
  std::vector<VerificationReport> v1, v2, vf, cross;
  bool converged = true;
};

SweepData run_sweep() {
  SweepData d;
  for (int i = 0; i < 12; ++i) {
    const double alpha = 5.0 + (90.0 - 5.0) * i / 11.0;
    d.alphas.push_back(alpha);
    const Problem prob = Problem::from_polar(0.5, 1.0, alpha * kDeg);
    const auto [p1, r1] = form1_solve(prob);
    const auto [p2, r2] = form2_solve(prob);
    const auto [pf, rf] = fixedv_solve(prob);
    d.converged = d.converged && r1.converged && r2.converged && rf.converged;
    d.p1.push_back(p1);
    d.p2.push_back(p2);
    d.pf.push_back(pf);
    d.v1.push_back(check_all(p1, prob));
    d.v2.push_back(check_all(p2, prob));
    d.vf.push_back(check_all(pf, prob));
    d.cross.push_back(cross_check(prob));
  }
  return d;
}

void criterion4(const SweepData& d) {
  double h = 0.0, circle = 0.0, cyl = 0.0, trans = 0.0, z5 = 0.0;
  for (std::size_t i = 0; i < d.alphas.size(); ++i) {
    h = std::max({h, named_violation(d.v1[i], {"hamiltonian_zero"}),
                  named_violation(d.v2[i], {"hamiltonian_zero"})});
    circle = std::max({circle, named_violation(d.v1[i], {"control_circle"}),
                       named_violation(d.v2[i], {"control_circle"})});
    cyl = std::max(
        {cyl, named_violation(d.v2[i], {"cylinder", "cylinder_eps"}),
         named_violation(d.vf[i], {"cylinder", "cylinder_control", "parabola"})});
    trans = std::max(
        {trans, named_violation(d.v1[i], {"transversality_lambda3"}),
         named_violation(d.v2[i], {"transversality_zeta3"}),
         named_violation(d.vf[i], {"transversality_zeta3"})});
    z5 = std::max(z5, named_violation(d.vf[i], {"zeta5_periodicity"}));
  }
  const bool ok = d.converged && h < 1e-8 && circle < 1e-10 && cyl < 1e-10 &&
                  trans < 1e-10 && z5 < 1e-8;
  report(4, "invariant suite on the 12-target sweep", ok,
         "H " + fmt(h) + ", circle " + fmt(circle) + ", surfaces " + fmt(cyl) +
             ", transversality " + fmt(trans) + ", zeta5 " + fmt(z5));
}

void criterion5(const SweepData& d) {
  double replay = 0.0, agree = 0.0, fd = 0.0;
  for (std::size_t i = 0; i < d.alphas.size(); ++i) {
    replay = std::max(
        {replay, named_violation(d.v1[i], {"rk4_replay_endpoint"}),
         named_violation(d.v2[i], {"rk4_replay_endpoint"}),
         named_violation(d.vf[i], {"rk4_replay_endpoint"}),
         named_violation(d.cross[i],
                         {"form1_replay_endpoint", "form2_replay_endpoint"})});
    agree = std::max(
        {agree, named_violation(d.cross[i],
                                {"state_agreement", "control_agreement"})});
    fd = std::max({fd,
                   named_violation(d.v1[i],
                                   {"kinematics_ode_fd", "costate_ode_fd"}),
                   named_violation(d.v2[i],
                                   {"kinematics_ode_fd", "zeta_ode_fd"}),
                   named_violation(d.vf[i],
                                   {"kinematics_ode_fd", "zeta_ode_fd",
                                    "zeta5_ode_fd"})});
  }
  const bool ok = d.converged && replay < 1e-6 && agree < 1e-6 && fd < 1e-6;
  report(5, "oracle equivalence (replay, cross-form, finite differences)", ok,
         "replay " + fmt(replay) + ", agreement " + fmt(agree) + ", fd " +
             fmt(fd));
}

void criterion6(const SweepData& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.alphas.size(); ++i) {
    worst = std::max({worst, named_violation(d.v1[i], {"cost_identity"}),
                      named_violation(d.v2[i], {"cost_identity"})});
  }
  const bool ok = d.converged && worst < 1e-6;
  report(6, "quadrature cost equals 2 tf (1 - mu)", ok,
         "max deviation " + fmt(worst));
}

void criterion7() {
  double ke_err = 0.0, jac_err = 0.0, eps_err = 0.0, lim_err = 0.0;
  for (double m = 0.01; m < 1.0; m += 0.14) {
    ke_err = std::max(ke_err, std::abs(ellip_k(m) - oracle::k_quadrature(m)));
    ke_err = std::max(
        ke_err, std::abs(ellip_e_complete(m) - oracle::e_complete_quadrature(m)));
    for (double phi : {0.3, 0.9, 1.4}) {
      ke_err = std::max(
          ke_err, std::abs(ellip_e_incomplete(phi, m) -
                           oracle::e_quadrature(phi, m)));
    }
  }
  for (double m : {0.01, 0.2, 0.4, 0.6, 0.8, 0.99}) {
    const double kk = ellip_k(m);
    for (int i = -6; i <= 6; ++i) {
      const double u = 0.5 * i * kk;  // covers [-3K, 3K]
      const EllipticTriple t = jacobi(u, m);
      jac_err = std::max(jac_err, std::abs(t.sn - oracle::sn_ode(u, m)));
      jac_err = std::max(jac_err, std::abs(t.cn - oracle::cn_ode(u, m)));
      jac_err = std::max(jac_err, std::abs(t.dn - oracle::dn_ode(u, m)));
      const double am = oracle::amplitude_ode(u, m);
      eps_err = std::max(eps_err, std::abs(jacobi_epsilon(u, m) -
                                           oracle::e_quadrature(am, m)));
    }
  }
  const double pi2 = std::acos(-1.0) / 2.0;
  lim_err = std::max(lim_err, std::abs(ellip_k(0.0) - pi2));
  lim_err = std::max(lim_err, std::abs(ellip_e_complete(0.0) - pi2));
  lim_err = std::max(lim_err, std::abs(ellip_e_complete(1.0) - 1.0));
  for (double u : {-2.0, -0.7, 0.4, 1.9}) {
    const EllipticTriple t0 = jacobi(u, 0.0);
    lim_err = std::max(lim_err, std::abs(t0.sn - std::sin(u)));
    lim_err = std::max(lim_err, std::abs(t0.cn - std::cos(u)));
    lim_err = std::max(lim_err, std::abs(t0.dn - 1.0));
    const EllipticTriple t1 = jacobi(u, 1.0);
    lim_err = std::max(lim_err, std::abs(t1.sn - std::tanh(u)));
    lim_err = std::max(lim_err, std::abs(t1.cn - 1.0 / std::cosh(u)));
  }
  const bool ok = ke_err < 1e-11 && jac_err < 1e-10 && eps_err < 1e-10 &&
                  lim_err < 1e-10;
  report(7, "special functions match independent oracles", ok,
         "K/E " + fmt(ke_err) + ", sn/cn/dn " + fmt(jac_err) + ", epsilon " +
             fmt(eps_err) + ", limits " + fmt(lim_err));
}

void criterion8() {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);
  const auto [popt, ropt] = form1_solve(prob, {1.21, 0.94}, 42, 1);
  const std::array<double, 4> lam = form1_eval_costates(popt, 0.0);
  const std::array<double, 4> center{lam[0], lam[1], lam[2], popt.tf};

  const int n = 200;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  std::vector<std::array<double, 2>> nlp_guess(n);
  std::vector<std::array<double, 4>> shot_guess(n);
  for (int i = 0; i < n; ++i) {
    nlp_guess[i] = {popt.q * uni(rng), popt.tf * uni(rng)};
    for (int k = 0; k < 4; ++k) shot_guess[i][k] = center[k] * uni(rng);
  }

  int nlp_ok = 0;
  const Box nlp_box{{1e-4, 1e-3}, {2.0 - 1e-4, 100.0}};
  auto nlp_fn = [&prob](const std::vector<double>& x) {
    const std::array<double, 2> r = form1_residual(x[0], x[1], prob, 0);
    return std::vector<double>{r[0], r[1]};
  };
  for (int i = 0; i < n; ++i) {
    const SolveReport rep =
        solve_system(nlp_fn, {nlp_guess[i][0], nlp_guess[i][1]}, nlp_box);
    if (rep.converged && std::abs(rep.root[0] - popt.q) < 0.01 &&
        std::abs(rep.root[1] - popt.tf) < 0.01) {
      ++nlp_ok;
    }
  }

  std::atomic<int> next{0}, shot_ok{0};
  const Box shot_box{{-10, -10, -10, 1e-3}, {10, 10, 10, 100}};
  auto shot_fn = [&prob](const std::vector<double>& x) {
    const std::array<double, 4> r =
        shoot_residual(x[0], x[1], x[2], x[3], prob, 2000);
    return std::vector<double>{r[0], r[1], r[2], r[3]};
  };
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      const SolveReport rep = solve_system(
          shot_fn,
          {shot_guess[i][0], shot_guess[i][1], shot_guess[i][2],
           shot_guess[i][3]},
          shot_box, 1e-10, 50);
      if (rep.converged && std::abs(rep.root[3] - popt.tf) < 0.01) ++shot_ok;
    }
  };
  const unsigned hc = std::thread::hardware_concurrency();
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, hc); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  const double nlp_rate = double(nlp_ok) / n;
  const double shot_rate = double(shot_ok.load()) / n;
  const bool ok = ropt.converged && nlp_rate >= 0.95 && nlp_rate > shot_rate;
  report(8, "NLP convergence rate >= 95% and above shooting", ok,
         "nlp " + fmt(nlp_rate) + ", shooting " + fmt(shot_rate));
}

void criterion9(const SweepData& d) {
  int sign_changes = 0;
  bool reversal_ok = true;
  double worst_v = 0.0;
  for (std::size_t i = 0; i < d.alphas.size(); ++i) {
    const Form1Params& p = d.p1[i];
    if (i > 0 && form1_transition_condition(d.p1[i - 1]) *
                         form1_transition_condition(p) < 0.0) {
      ++sign_changes;
    }
    if (form1_transition_condition(p) > 0.0) {
      // Reversing side: the forward speed must vanish inside (0, 1).
      const double tau_star = form1_stationary_time(p);
      reversal_ok = reversal_ok && tau_star > 0.0 && tau_star < 1.0;
      worst_v =
          std::max(worst_v, std::abs(form1_eval_control(p, tau_star).v));
    }
  }
  const bool ok =
      d.converged && sign_changes == 1 && reversal_ok && worst_v < 1e-8;
  report(9, "transition boundary crossed once, v(tau*) = 0 beyond it", ok,
         std::to_string(sign_changes) + " sign change(s), |v(tau*)| " +
             fmt(worst_v));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  const SweepData sweep = run_sweep();
  criterion4(sweep);
  criterion5(sweep);
  criterion6(sweep);
  criterion7();
  criterion8();
  criterion9(sweep);
  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
