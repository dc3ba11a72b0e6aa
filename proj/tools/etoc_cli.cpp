// Command-line planner: plan single maneuvers, sweep terminal angles,
// run the convergence benchmark, and verify solutions.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "etoc/elliptic.hpp"
#include "etoc/fixedv.hpp"
#include "etoc/form1.hpp"
#include "etoc/form2.hpp"
#include "etoc/model.hpp"
#include "etoc/rootsolve.hpp"
#include "etoc/shooting.hpp"
#include "etoc/verify.hpp"

using json = nlohmann::ordered_json;
using namespace etoc;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitVerifyFail = 3;
const double kDeg = std::acos(-1.0) / 180.0;

int num_threads() {
  if (const char* env = std::getenv("ETOC_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Atomic file write: temp file in the same directory, then rename.
void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

struct Solution {
  Formulation formulation;
  Problem prob;
  double tf = 0.0;
  std::optional<Form1Params> p1;
  std::optional<Form2Params> p2;
  std::optional<FixedVParams> pf;
  SolveReport report;

  State state(double tau) const {
    if (p1) return form1_eval_state(*p1, tau);
    if (p2) return form2_eval_state(*p2, tau);
    return fixedv_eval_state(*pf, tau);
  }
  Control control(double tau) const {
    if (p1) return form1_eval_control(*p1, tau);
    if (p2) return form2_eval_control(*p2, tau);
    return fixedv_eval_control(*pf, tau);
  }
  std::vector<double> costates(double tau) const {
    if (p1) {
      const std::array<double, 4> l = form1_eval_costates(*p1, tau);
      return {l[0], l[1], l[2], l[3]};
    }
    if (p2) {
      const std::array<double, 3> z = form2_eval_costates(*p2, tau);
      return {z[0], z[1], z[2]};
    }
    const std::array<double, 4> z = fixedv_eval_costates(*pf, tau);
    return {z[0], z[1], z[2], z[3]};
  }
  VerificationReport verify(int n_samples = 101) const {
    if (p1) return check_all(*p1, prob, n_samples);
    if (p2) return check_all(*p2, prob, n_samples);
    return check_all(*pf, prob, n_samples);
  }
};

Formulation parse_formulation(const std::string& name) {
  if (name == "form1") return Formulation::Form1;
  if (name == "form2") return Formulation::Form2;
  if (name == "fixedv") return Formulation::FixedV;
  throw CLI::ValidationError("--formulation",
                             "must be one of form1|form2|fixedv");
}

Solution solve_problem(const Problem& prob, Formulation f,
                       const std::vector<double>& guess, std::uint64_t seed) {
  Solution sol;
  sol.formulation = f;
  sol.prob = prob;
  switch (f) {
    case Formulation::Form1: {
      std::array<double, 2> g{0.0, 0.0};
      if (guess.size() == 2) g = {guess[0], guess[1]};
      auto [p, rep] = form1_solve(prob, g, seed);
      sol.p1 = p;
      sol.report = rep;
      sol.tf = p.tf;
      break;
    }
    case Formulation::Form2: {
      std::array<double, 2> g{0.0, 0.0};
      if (guess.size() == 2) g = {guess[0], guess[1]};
      auto [p, rep] = form2_solve(prob, g, seed);
      sol.p2 = p;
      sol.report = rep;
      sol.tf = p.tf;
      break;
    }
    case Formulation::FixedV: {
      std::array<double, 3> g{0.0, 0.0, 0.0};
      if (guess.size() == 3) g = {guess[0], guess[1], guess[2]};
      auto [p, rep] = fixedv_solve(prob, g, seed);
      sol.pf = p;
      sol.report = rep;
      sol.tf = p.tf;
      break;
    }
  }
  return sol;
}

double quadrature_cost(const Solution& sol, int n_samples = 2001) {
  std::vector<Control> cs;
  cs.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    cs.push_back(sol.control(static_cast<double>(i) / (n_samples - 1)));
  }
  return cost_quadrature(cs, sol.tf, sol.prob.mu);
}

std::string trajectory_csv(const Solution& sol, int samples) {
  std::ostringstream out;
  const bool fixedv = sol.formulation == Formulation::FixedV;
  out << (fixedv ? "tau,x,y,theta,v,omega,z1,z2,z3,z5"
                 : "tau,x,y,theta,v,omega,c1,c2,c3,H")
      << "\n";
  for (int i = 0; i < samples; ++i) {
    const double tau = static_cast<double>(i) / (samples - 1);
    const State s = sol.state(tau);
    const Control c = sol.control(tau);
    const std::vector<double> z = sol.costates(tau);
    out << fmt17(tau) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ','
        << fmt17(s.theta) << ',' << fmt17(c.v) << ',' << fmt17(c.omega);
    if (fixedv) {
      out << ',' << fmt17(z[0]) << ',' << fmt17(z[1]) << ',' << fmt17(z[2])
          << ',' << fmt17(z[3]);
    } else {
      const double h =
          sol.tf * ((1.0 - sol.prob.mu) -
                    0.5 * sol.prob.mu * (c.v * c.v + c.omega * c.omega));
      out << ',' << fmt17(z[0]) << ',' << fmt17(z[1]) << ',' << fmt17(z[2])
          << ',' << fmt17(h);
    }
    out << "\n";
  }
  return out.str();
}

json params_json(const Solution& sol) {
  json p;
  if (sol.p1) {
    const Form1Params& q = *sol.p1;
    p["q"] = q.q;
    p["n"] = q.n;
    p["z"] = q.z;
    p["phi"] = q.phi;
    p["eta"] = q.eta;
    p["m"] = q.m;
    p["cx"] = q.cx;
    p["cy"] = q.cy;
    p["mirror"] = q.mirror;
    p["degenerate"] = q.degenerate;
  } else if (sol.p2) {
    const Form2Params& q = *sol.p2;
    p["eps"] = q.eps;
    p["k_sign"] = q.k_sign;
    p["k"] = q.k;
    p["m"] = q.m;
    p["eta"] = q.eta;
    p["c_theta"] = q.c_theta;
    p["cx"] = q.cx;
    p["cy"] = q.cy;
    p["degenerate"] = q.degenerate;
  } else {
    const FixedVParams& q = *sol.pf;
    p["m"] = q.m;
    p["vc"] = q.vc;
    p["cc"] = q.cc;
    p["kc"] = q.kc;
    p["lambda_cap"] = q.lambda_cap;
    p["eta"] = q.eta;
    p["c_theta"] = q.c_theta;
    p["cx"] = q.cx;
    p["cy"] = q.cy;
    p["c_zeta5"] = q.c_zeta5;
    p["mirrored"] = q.mirrored;
    p["degenerate"] = q.degenerate;
  }
  return p;
}

json verification_json(const VerificationReport& v) {
  json out;
  json checks = json::array();
  for (const CheckResult& c : v.checks) {
    checks.push_back({{"name", c.name},
                      {"max_violation", c.max_violation},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  out["checks"] = checks;
  out["overall"] = v.overall;
  return out;
}

std::string formulation_name(Formulation f) {
  switch (f) {
    case Formulation::Form1: return "form1";
    case Formulation::Form2: return "form2";
    case Formulation::FixedV: return "fixedv";
  }
  return "?";
}

json summary_json(const Solution& sol, const VerificationReport& v) {
  json out;
  out["formulation"] = formulation_name(sol.formulation);
  out["mu"] = sol.prob.mu;
  out["target"] = {{"r", sol.prob.r}, {"alpha_rad", sol.prob.alpha}};
  out["params"] = params_json(sol);
  out["tf"] = sol.tf;
  out["cost"] = quadrature_cost(sol);
  out["verification"] = verification_json(v);
  return out;
}

std::string svg_polylines(const std::vector<std::vector<State>>& trajs) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const auto& t : trajs) {
    for (const State& s : t) {
      xmin = std::min(xmin, s.x);
      xmax = std::max(xmax, s.x);
      ymin = std::min(ymin, s.y);
      ymax = std::max(ymax, s.y);
    }
  }
  const double pad = 0.1 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
  xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
  const double w = 640.0, h = 640.0;
  const double sx = w / (xmax - xmin), sy = h / (ymax - ymin);
  auto px = [&](double x) { return (x - xmin) * sx; };
  auto py = [&](double y) { return h - (y - ymin) * sy; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n";
  // Axes through the origin.
  out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(0.0) << "\" x2=\""
      << px(xmax) << "\" y2=\"" << py(0.0)
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << px(0.0) << "\" y1=\"" << py(ymin) << "\" x2=\""
      << px(0.0) << "\" y2=\"" << py(ymax)
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  for (const auto& t : trajs) {
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
           "points=\"";
    for (const State& s : t) out << px(s.x) << ',' << py(s.y) << ' ';
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

struct PlanFlags {
  double mu = 0.5;
  double x = 0.0, y = 0.0;
  double r = 0.0, alpha_deg = 0.0;
  bool have_xy = false, have_polar = false;
  std::string formulation = "form1";
  int samples = 201;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 42;
  std::vector<double> guess;
};

void add_plan_flags(CLI::App* cmd, PlanFlags& f) {
  cmd->add_option("--mu", f.mu, "time/energy weight in [1e-3, 1-1e-3]");
  auto* ox = cmd->add_option("--x", f.x, "target x");
  auto* oy = cmd->add_option("--y", f.y, "target y");
  auto* orr = cmd->add_option("--r", f.r, "target radius");
  auto* oa = cmd->add_option("--alpha-deg", f.alpha_deg,
                             "target angle in degrees");
  cmd->add_option("--formulation", f.formulation, "form1|form2|fixedv");
  cmd->add_option("--samples", f.samples, "trajectory samples")
      ->check(CLI::Range(2, 1000000));
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "csv|json|stdout");
  cmd->add_option("--seed", f.seed, "random seed for multistart");
  cmd->add_option("--guess", f.guess, "initial guess (comma list)")
      ->delimiter(',');
  cmd->callback([&f, ox, oy, orr, oa]() {
    f.have_xy = ox->count() > 0 && oy->count() > 0;
    f.have_polar = orr->count() > 0 && oa->count() > 0;
  });
}

Problem problem_from_flags(const PlanFlags& f, Formulation form) {
  if (f.have_xy == f.have_polar) {
    throw std::domain_error("specify exactly one of (--x --y) or (--r --alpha-deg)");
  }
  if (f.have_xy) return Problem::from_cartesian(f.mu, f.x, f.y, form);
  return Problem::from_polar(f.mu, f.r, f.alpha_deg * kDeg, form);
}

int cmd_plan(const PlanFlags& f) {
  Formulation form;
  Problem prob = Problem::from_polar(0.5, 1.0, 0.0);
  try {
    form = parse_formulation(f.formulation);
    prob = problem_from_flags(f, form);
    if (f.format != "csv" && f.format != "json" && f.format != "stdout") {
      throw std::domain_error("--format must be csv, json or stdout");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Solution sol = solve_problem(prob, form, f.guess, f.seed);
  if (!sol.report.converged) {
    std::cerr << "error: solver did not converge (residual "
              << sol.report.final_residual_norm << ")\n";
    return kExitNoConvergence;
  }
  const VerificationReport v = sol.verify();
  const json summary = summary_json(sol, v);
  if (f.format == "stdout" || f.out.empty()) {
    std::cout << trajectory_csv(sol, f.samples);
    std::cerr << summary.dump(2) << "\n";
  } else if (f.format == "csv") {
    write_file(f.out, trajectory_csv(sol, f.samples));
    write_file(f.out + ".summary.json", summary.dump(2) + "\n");
  } else {
    json doc = summary;
    json traj = json::array();
    for (int i = 0; i < f.samples; ++i) {
      const double tau = static_cast<double>(i) / (f.samples - 1);
      const State s = sol.state(tau);
      const Control c = sol.control(tau);
      traj.push_back({{"tau", tau},
                      {"x", s.x},
                      {"y", s.y},
                      {"theta", s.theta},
                      {"v", c.v},
                      {"omega", c.omega},
                      {"costates", sol.costates(tau)}});
    }
    doc["trajectory"] = traj;
    write_file(f.out, doc.dump(2) + "\n");
  }
  if (!v.overall) {
    std::cerr << "error: verification failed\n";
    for (const CheckResult& c : v.checks) {
      if (!c.pass) {
        std::cerr << "  " << c.name << ": " << c.max_violation << " > "
                  << c.tolerance << "\n";
      }
    }
    return kExitVerifyFail;
  }
  return 0;
}

int cmd_sweep(const PlanFlags& f, double a0, double a1, int steps, double r,
              const std::string& svg_path) {
  Formulation form;
  try {
    form = parse_formulation(f.formulation);
    if (steps < 1) throw std::domain_error("--alpha-steps must be >= 1");
    if (!(r > 0.0)) throw std::domain_error("--r must be positive");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string outdir = f.out.empty() ? "sweep_out" : f.out;
  std::vector<Solution> sols(steps);
  std::vector<bool> ok(steps, false);
  std::vector<double> alphas(steps);
  for (int i = 0; i < steps; ++i) {
    alphas[i] = steps == 1 ? a0 : a0 + (a1 - a0) * i / (steps - 1);
  }
  const int nt = std::min(num_threads(), steps);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
      try {
        const Problem prob =
            Problem::from_polar(f.mu, r, alphas[i] * kDeg, form);
        sols[i] = solve_problem(prob, form, f.guess, f.seed);
        ok[i] = sols[i].report.converged;
      } catch (const std::exception&) {
        ok[i] = false;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::ostringstream summary;
  summary << "alpha_deg,tf,cost,";
  if (form == Formulation::Form1) {
    summary << "q,transition_condition";
  } else if (form == Formulation::Form2) {
    summary << "eps,m";
  } else {
    summary << "m,vc";
  }
  summary << ",converged\n";
  std::vector<std::vector<State>> trajs;
  int failures = 0;
  for (int i = 0; i < steps; ++i) {
    summary << fmt17(alphas[i]) << ',';
    if (!ok[i]) {
      ++failures;
      summary << "nan,nan,nan,nan,0\n";
      continue;
    }
    const Solution& s = sols[i];
    summary << fmt17(s.tf) << ',' << fmt17(quadrature_cost(s)) << ',';
    if (s.p1) {
      summary << fmt17(s.p1->q) << ','
              << fmt17(form1_transition_condition(*s.p1));
    } else if (s.p2) {
      summary << fmt17(s.p2->eps) << ',' << fmt17(s.p2->m);
    } else {
      summary << fmt17(s.pf->m) << ',' << fmt17(s.pf->vc);
    }
    summary << ",1\n";
    write_file(outdir + "/traj_" + std::to_string(i) + ".csv",
               trajectory_csv(s, f.samples));
    std::vector<State> line;
    for (int k = 0; k < f.samples; ++k) {
      line.push_back(s.state(static_cast<double>(k) / (f.samples - 1)));
    }
    trajs.push_back(std::move(line));
  }
  write_file(outdir + "/summary.csv", summary.str());
  if (!svg_path.empty()) write_file(svg_path, svg_polylines(trajs));
  if (failures > 0) {
    std::cerr << "error: " << failures << " sweep point(s) failed\n";
    return kExitNoConvergence;
  }
  return 0;
}

int cmd_bench(const std::string& out, std::uint64_t seed, int shooting_starts,
              int shooting_steps) {
  const Problem prob = Problem::from_polar(0.5, 1.0, 30.0 * kDeg);

  // Part 1: NLP solves from the reference 5x5 guess grid.
  std::ostringstream grid_csv;
  grid_csv << "q0,tf0,converged,q,tf,iterations\n";
  int grid_converged = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (double q0 : {1.19, 1.20, 1.21, 1.22, 1.23}) {
    for (double tf0 : {0.92, 0.93, 0.94, 0.95, 0.96}) {
      const auto [p, rep] = form1_solve(prob, {q0, tf0}, seed, 1);
      if (rep.converged) ++grid_converged;
      grid_csv << fmt17(q0) << ',' << fmt17(tf0) << ','
               << (rep.converged ? 1 : 0) << ',' << fmt17(p.q) << ','
               << fmt17(p.tf) << ',' << rep.iterations << "\n";
    }
  }
  const double grid_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  // Part 2: robustness around the optimum, +-50% perturbations.
  const auto [popt, ropt] = form1_solve(prob, {1.21, 0.94}, seed, 1);
  const std::array<double, 4> lam = form1_eval_costates(popt, 0.0);
  const std::array<double, 4> shot_center{lam[0], lam[1], lam[2], popt.tf};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  std::vector<std::array<double, 2>> nlp_guesses(shooting_starts);
  std::vector<std::array<double, 4>> shot_guesses(shooting_starts);
  for (int i = 0; i < shooting_starts; ++i) {
    nlp_guesses[i] = {popt.q * uni(rng), popt.tf * uni(rng)};
    for (int k = 0; k < 4; ++k) shot_guesses[i][k] = shot_center[k] * uni(rng);
  }

  std::vector<int> nlp_ok(shooting_starts, 0), shot_ok(shooting_starts, 0);
  const auto t1 = std::chrono::steady_clock::now();
  const Box nlp_box{{1e-4, 1e-3}, {2.0 - 1e-4, 100.0}};
  auto nlp_fn = [&prob](const std::vector<double>& x) {
    const std::array<double, 2> r = form1_residual(x[0], x[1], prob, 0);
    return std::vector<double>{r[0], r[1]};
  };
  for (int i = 0; i < shooting_starts; ++i) {
    const SolveReport rep = solve_system(
        nlp_fn, {nlp_guesses[i][0], nlp_guesses[i][1]}, nlp_box, 1e-10);
    nlp_ok[i] = rep.converged && std::abs(rep.root[0] - popt.q) < 0.01 &&
                std::abs(rep.root[1] - popt.tf) < 0.01;
  }
  const double nlp_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
          .count();

  const auto t2 = std::chrono::steady_clock::now();
  const Box shot_box{{-10, -10, -10, 1e-3}, {10, 10, 10, 100}};
  auto shot_fn = [&prob, shooting_steps](const std::vector<double>& x) {
    const std::array<double, 4> r =
        shoot_residual(x[0], x[1], x[2], x[3], prob, shooting_steps);
    return std::vector<double>{r[0], r[1], r[2], r[3]};
  };
  const int nt = num_threads();
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < shooting_starts;
         i = next.fetch_add(1)) {
      const SolveReport rep = solve_system(
          shot_fn,
          {shot_guesses[i][0], shot_guesses[i][1], shot_guesses[i][2],
           shot_guesses[i][3]},
          shot_box, 1e-10, 50);
      shot_ok[i] = rep.converged && std::abs(rep.root[3] - popt.tf) < 0.01;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  const double shot_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t2)
          .count();

  int nlp_total = 0, shot_total = 0;
  std::ostringstream robust_csv;
  robust_csv << "index,nlp_converged,shooting_converged\n";
  for (int i = 0; i < shooting_starts; ++i) {
    nlp_total += nlp_ok[i];
    shot_total += shot_ok[i];
    robust_csv << i << ',' << nlp_ok[i] << ',' << shot_ok[i] << "\n";
  }

  json doc;
  doc["problem"] = {{"mu", 0.5}, {"r", 1.0}, {"alpha_rad", 30.0 * kDeg}};
  doc["grid"] = {{"total", 25},
                 {"converged", grid_converged},
                 {"wall_time", grid_time}};
  doc["robustness"] = {{"starts", shooting_starts},
                       {"nlp_converged", nlp_total},
                       {"nlp_rate", double(nlp_total) / shooting_starts},
                       {"nlp_wall_time", nlp_time},
                       {"shooting_converged", shot_total},
                       {"shooting_rate", double(shot_total) / shooting_starts},
                       {"shooting_steps", shooting_steps},
                       {"shooting_wall_time", shot_time}};
  doc["seed"] = seed;

  const std::string base = out.empty() ? "bench" : out;
  write_file(base + "_grid.csv", grid_csv.str());
  write_file(base + "_robustness.csv", robust_csv.str());
  write_file(base + ".json", doc.dump(2) + "\n");
  std::cerr << "grid " << grid_converged << "/25, nlp rate "
            << double(nlp_total) / shooting_starts << ", shooting rate "
            << double(shot_total) / shooting_starts << "\n";
  return 0;
}

int cmd_verify(const PlanFlags& f, bool cross, const std::string& solution) {
  try {
    if (!solution.empty()) {
      std::ifstream in(solution);
      if (!in) throw std::domain_error("cannot open " + solution);
      json doc = json::parse(in);
      const std::string fname = doc.at("formulation").get<std::string>();
      const double mu = doc.at("mu").get<double>();
      const double r = doc.at("target").at("r").get<double>();
      const double alpha = doc.at("target").at("alpha_rad").get<double>();
      const Formulation form = parse_formulation(fname);
      const Problem prob = Problem::from_polar(mu, r, alpha, form);
      const json& p = doc.at("params");
      VerificationReport v;
      if (std::abs(std::sin(alpha)) <= 1e-9) {
        // Degenerate solutions cannot be re-derived from (q, tf) alone;
        // re-solve analytically.
        const Solution sol = solve_problem(prob, form, {}, 42);
        v = sol.verify();
      } else if (form == Formulation::Form1) {
        v = check_all(form1_derive_params(p.at("q").get<double>(),
                                          doc.at("tf").get<double>(), mu,
                                          p.at("n").get<int>(),
                                          p.at("mirror").get<double>()),
                      prob);
      } else if (form == Formulation::Form2) {
        v = check_all(form2_derive_params(p.at("eps").get<double>(),
                                          doc.at("tf").get<double>(), mu,
                                          p.at("k_sign").get<int>()),
                      prob);
      } else {
        v = check_all(fixedv_derive_params(p.at("m").get<double>(),
                                           doc.at("tf").get<double>(),
                                           p.at("vc").get<double>(), mu,
                                           p.at("mirrored").get<bool>()),
                      prob);
      }
      std::cout << verification_json(v).dump(2) << "\n";
      return v.overall ? 0 : kExitVerifyFail;
    }
    const Formulation form = parse_formulation(f.formulation);
    const Problem prob = problem_from_flags(f, form);
    if (cross) {
      const VerificationReport v = cross_check(prob, f.seed);
      std::cout << verification_json(v).dump(2) << "\n";
      return v.overall ? 0 : kExitVerifyFail;
    }
    const Solution sol = solve_problem(prob, form, f.guess, f.seed);
    if (!sol.report.converged) {
      std::cerr << "error: solver did not converge\n";
      return kExitNoConvergence;
    }
    const VerificationReport v = sol.verify();
    std::cout << verification_json(v).dump(2) << "\n";
    return v.overall ? 0 : kExitVerifyFail;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: bad solution file: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-time optimal trajectory planner for wheeled robots"};
  app.require_subcommand(1);

  PlanFlags plan_flags;
  CLI::App* plan = app.add_subcommand("plan", "solve one maneuver");
  add_plan_flags(plan, plan_flags);

  PlanFlags sweep_flags;
  double alpha_start = 5.0, alpha_end = 90.0, sweep_r = 1.0;
  int alpha_steps = 12;
  std::string svg_path;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep terminal angles");
  add_plan_flags(sweep, sweep_flags);
  sweep->add_option("--alpha-start", alpha_start, "first angle (deg)");
  sweep->add_option("--alpha-end", alpha_end, "last angle (deg)");
  sweep->add_option("--alpha-steps", alpha_steps, "number of angles");
  sweep->add_option("--sweep-r", sweep_r, "target radius");
  sweep->add_option("--svg", svg_path, "write trajectory SVG here");

  std::string bench_out = "bench";
  std::uint64_t bench_seed = 42;
  int shooting_starts = 200, shooting_steps = 2000;
  CLI::App* bench = app.add_subcommand("bench", "convergence benchmark");
  bench->add_option("--out", bench_out, "output basename");
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--shooting-starts", shooting_starts,
                    "number of random guesses per method");
  bench->add_option("--shooting-steps", shooting_steps,
                    "RK4 steps per shot in the robustness study");

  PlanFlags verify_flags;
  bool cross = false;
  std::string solution_path;
  CLI::App* verify = app.add_subcommand("verify", "verify a solution");
  add_plan_flags(verify, verify_flags);
  verify->add_flag("--cross", cross, "cross-check form1 against form2");
  verify->add_option("--solution", solution_path,
                     "verify a previously written plan JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(plan_flags);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_flags, alpha_start, alpha_end, alpha_steps,
                       sweep_r, svg_path);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_out, bench_seed, shooting_starts, shooting_steps);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_flags, cross, solution_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
