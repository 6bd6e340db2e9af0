// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.
//
// Command-line front end: saddle-point solves on QCQP, multiple-kernel SVM
// and matrix-game instances, oracle verification suites, and post-hoc rate
// fits on emitted CSV logs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "apd/harness.hpp"

namespace {

// key = value file mirroring the long flags (without the leading dashes);
// '#' starts a comment. Explicit command-line flags win over file entries.
class KeyValueConfig {
 public:
  KeyValueConfig(const std::string& path, const CLI::App* cmd) : cmd_(cmd) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (!key.empty()) values_[key] = val;
    }
  }

  template <typename T>
  void apply(const std::string& flag, T& target) const {
    const auto it = values_.find(flag);
    if (it == values_.end()) return;
    if (cmd_->count("--" + flag) > 0) return;  // explicit flag wins
    std::istringstream ss(it->second);
    T parsed;
    if (!(ss >> parsed))
      throw std::runtime_error("config: cannot parse value for '" + flag + "'");
    target = parsed;
  }

 private:
  const CLI::App* cmd_;
  std::map<std::string, std::string> values_;
};

struct CommonFlags {
  double mu = -1.0;  // <0: take the oracle's modulus
  double delta = -1.0;
  double c_alpha = -1.0;
  double c_beta = -1.0;
  double eta = 0.7;
  double tau_bar = 1e-3;
  double gamma0 = 1.0;
  double tau_max = 0.0;
  long max_outer = 20000;
  int max_inner = 60;
  double tol = 0.0;
  std::uint64_t seed = 1;
  int reps = 1;
  int parallel = 1;
  std::string ek_variant = "exact";
  std::string algorithm = "apdb";
  long restart_period = 0;
  std::string out_dir = "out";
  std::string reference = "long_run";
  double epsilon = 1e-6;
  bool timing = false;
  std::string config_path;

  void load_config(const CLI::App* cmd) {
    const KeyValueConfig kv(config_path, cmd);
    kv.apply("mu", mu);
    kv.apply("delta", delta);
    kv.apply("c-alpha", c_alpha);
    kv.apply("c-beta", c_beta);
    kv.apply("eta", eta);
    kv.apply("tau-bar", tau_bar);
    kv.apply("gamma0", gamma0);
    kv.apply("tau-max", tau_max);
    kv.apply("max-outer", max_outer);
    kv.apply("max-inner", max_inner);
    kv.apply("tol", tol);
    kv.apply("seed", seed);
    kv.apply("reps", reps);
    kv.apply("parallel", parallel);
    kv.apply("ek-variant", ek_variant);
    kv.apply("algorithm", algorithm);
    kv.apply("restart-period", restart_period);
    kv.apply("out", out_dir);
    kv.apply("reference", reference);
    kv.apply("epsilon", epsilon);
    kv.apply("timing", timing);
  }
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mu", f.mu, "strong-convexity modulus override (<0: oracle's)");
  cmd->add_option("--delta", f.delta, "acceptance margin delta in [0,1) (<0: default)");
  cmd->add_option("--c-alpha", f.c_alpha, "dual extrapolation weight (<0: default)");
  cmd->add_option("--c-beta", f.c_beta, "dual curvature weight (<0: default)");
  cmd->add_option("--eta", f.eta, "backtracking shrink factor in (0,1)");
  cmd->add_option("--tau-bar", f.tau_bar, "initial primal step / backtracking cap");
  cmd->add_option("--gamma0", f.gamma0, "initial dual/primal step ratio");
  cmd->add_option("--tau-max", f.tau_max, "non-monotone step cap (0: monotone rule)");
  cmd->add_option("--max-outer", f.max_outer, "outer iteration budget");
  cmd->add_option("--max-inner", f.max_inner, "backtracking trial budget");
  cmd->add_option("--tol", f.tol, "gap/displacement stopping tolerance");
  cmd->add_option("--seed", f.seed, "base seed; replication r uses seed+r");
  cmd->add_option("--reps", f.reps, "replication count");
  cmd->add_option("--parallel", f.parallel, "worker threads for replications");
  cmd->add_option("--ek-variant", f.ek_variant, "backtracking test: exact|tilde")
      ->check(CLI::IsMember({"exact", "tilde"}));
  cmd->add_option("--algorithm", f.algorithm, "apd|apdb|apdb-switched")
      ->check(CLI::IsMember({"apd", "apdb", "apdb-switched"}));
  cmd->add_option("--restart-period", f.restart_period,
                  "restart every N iterations (0: never)");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--reference", f.reference, "none|long_run")
      ->check(CLI::IsMember({"none", "long_run"}));
  cmd->add_option("--epsilon", f.epsilon,
                  "metric termination target (0: run the full budget)");
  cmd->add_flag("--timing", f.timing,
                "record wall-clock elapsed_s (forfeits byte-identical CSVs)");
  cmd->add_option("--config", f.config_path,
                  "key = value file mirroring these flags; flags override it");
}

apd::RunManifest to_manifest(const CommonFlags& f, const CLI::App* cmd) {
  apd::RunManifest man;
  man.auto_steps =
      cmd->count("--tau-bar") == 0 && cmd->count("--gamma0") == 0;
  man.solver.algorithm = apd::algorithm_from_string(f.algorithm);
  man.solver.ek_variant = apd::ek_variant_from_string(f.ek_variant);
  if (f.mu >= 0.0) man.solver.mu = f.mu;
  man.solver.tau0 = f.tau_bar;
  man.solver.gamma0 = f.gamma0;
  man.solver.eta = f.eta;
  if (f.tau_max > 0.0) man.solver.tau_max = f.tau_max;
  man.solver.max_outer = f.max_outer;
  man.solver.max_inner = f.max_inner;
  man.solver.tol = f.tol;
  if (f.restart_period > 0) man.solver.restart_period = f.restart_period;
  man.out_dir = f.out_dir;
  man.seed = f.seed;
  man.replications = f.reps;
  man.parallelism = f.parallel;
  man.epsilon = f.epsilon;
  man.timing = f.timing;
  man.ref_policy = f.reference == "none" ? apd::RefPolicy::none
                                         : apd::RefPolicy::long_run;
  return man;
}

// delta / c_alpha / c_beta defaults depend on the variant; fill unset ones.
void finish_solver_defaults(apd::RunManifest& man, const CommonFlags& f,
                            bool lyy_positive) {
  auto& s = man.solver;
  s.delta = f.delta >= 0.0 ? f.delta : 1e-3;
  const bool both = s.algorithm == apd::Algorithm::apdb_switched || lyy_positive;
  s.c_alpha = f.c_alpha >= 0.0 ? f.c_alpha : (both ? 0.49 : 0.999 - s.delta);
  s.c_beta = f.c_beta >= 0.0 ? f.c_beta : (both ? 0.49 : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accelerated primal-dual saddle-point solvers"};
  app.require_subcommand(1);

  CommonFlags qf, sf, gf;

  auto* qcqp = app.add_subcommand("solve-qcqp", "random box-constrained QCQP");
  int q_n = 50, q_m = 5;
  bool q_strong = false;
  qcqp->add_option("--n", q_n, "primal dimension");
  qcqp->add_option("--m", q_m, "constraint count");
  qcqp->add_flag("--strongly-convex", q_strong, "objective spectrum in [1,101]");
  add_common_flags(qcqp, qf);

  auto* svm = app.add_subcommand("solve-svm", "multiple-kernel SVM saddle problem");
  std::string s_variant = "l2", s_data, s_label = "label";
  double s_C = 1.0, s_lambda = 1.0, s_sep = 4.0;
  int s_train = 60, s_test = 20;
  svm->add_option("--variant", s_variant, "l1|l2")
      ->check(CLI::IsMember({"l1", "l2"}));
  svm->add_option("--C", s_C, "box bound (l1)");
  svm->add_option("--lambda", s_lambda, "ridge weight (l2)");
  svm->add_option("--n-train", s_train, "training points (synthetic data)");
  svm->add_option("--n-test", s_test, "test points (synthetic data)");
  svm->add_option("--separation", s_sep, "blob separation (synthetic data)");
  svm->add_option("--data", s_data, "CSV dataset (default: synthetic blobs)");
  svm->add_option("--label-column", s_label, "label column name");
  add_common_flags(svm, sf);

  auto* game = app.add_subcommand("solve-game", "bilinear matrix game");
  bool g_random = false;
  int g_rows = 3, g_cols = 3;
  game->add_flag("--random", g_random, "random Gaussian payoff instead of RPS");
  game->add_option("--rows", g_rows, "payoff rows (random game)");
  game->add_option("--cols", g_cols, "payoff columns (random game)");
  add_common_flags(game, gf);

  auto* verify = app.add_subcommand(
      "verify", "finite-difference, prox-inequality, Moreau and schedule suites");
  std::uint64_t v_seed = 2026;
  verify->add_option("--seed", v_seed, "suite seed");

  auto* rates = app.add_subcommand("rates", "log-log slope fit on an emitted CSV");
  std::string r_csv, r_metric = "subopt";
  long r_kmin = 100, r_kmax = 10000;
  rates->add_option("--csv", r_csv, "per-iteration CSV")->required();
  rates->add_option("--metric", r_metric, "column to fit");
  rates->add_option("--k-min", r_kmin, "fit range start");
  rates->add_option("--k-max", r_kmax, "fit range end");

  CLI11_PARSE(app, argc, argv);

  try {
    if (qcqp->parsed()) {
      qf.load_config(qcqp);
      const KeyValueConfig kv(qf.config_path, qcqp);
      kv.apply("n", q_n);
      kv.apply("m", q_m);
      kv.apply("strongly-convex", q_strong);
      apd::RunManifest man = to_manifest(qf, qcqp);
      man.problem.kind = apd::ProblemSpec::Kind::qcqp;
      man.problem.qcqp = {q_n, q_m, q_strong};
      finish_solver_defaults(man, qf, /*lyy_positive=*/false);
      return apd::cli_run(man);
    }
    if (svm->parsed()) {
      sf.load_config(svm);
      const KeyValueConfig kv(sf.config_path, svm);
      kv.apply("variant", s_variant);
      kv.apply("C", s_C);
      kv.apply("lambda", s_lambda);
      kv.apply("n-train", s_train);
      kv.apply("n-test", s_test);
      kv.apply("separation", s_sep);
      kv.apply("data", s_data);
      kv.apply("label-column", s_label);
      apd::RunManifest man = to_manifest(sf, svm);
      man.problem.kind = apd::ProblemSpec::Kind::svm;
      man.problem.svm.variant =
          s_variant == "l1" ? apd::SvmVariant::l1 : apd::SvmVariant::l2;
      man.problem.svm.C = s_C;
      man.problem.svm.lambda = s_lambda;
      man.problem.svm.n_train = s_train;
      man.problem.svm.n_test = s_test;
      man.problem.svm.separation = s_sep;
      man.problem.svm.csv_path = s_data;
      man.problem.svm.label_column = s_label;
      finish_solver_defaults(man, sf, /*lyy_positive=*/false);
      return apd::cli_run(man);
    }
    if (game->parsed()) {
      gf.load_config(game);
      const KeyValueConfig kv(gf.config_path, game);
      kv.apply("random", g_random);
      kv.apply("rows", g_rows);
      kv.apply("cols", g_cols);
      apd::RunManifest man = to_manifest(gf, game);
      man.problem.kind = apd::ProblemSpec::Kind::game;
      man.problem.game.rps = !g_random;
      man.problem.game.rows = g_rows;
      man.problem.game.cols = g_cols;
      man.ref_policy = apd::RefPolicy::none;  // the sup-gap metric needs none
      finish_solver_defaults(man, gf, /*lyy_positive=*/false);
      return apd::cli_run(man);
    }
    if (verify->parsed()) {
      const int failures = apd::run_verification(v_seed, std::cout);
      std::cout << (failures == 0 ? "all suites passed\n"
                                  : "some suites FAILED\n");
      return failures == 0 ? 0 : 1;
    }
    if (rates->parsed()) {
      const double slope = apd::rates_from_csv(r_csv, r_metric, r_kmin, r_kmax);
      std::printf("slope %.6f\n", slope);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
