// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "apd/checks.hpp"
#include "apd/dataset.hpp"
#include "apd/games.hpp"
#include "apd/prox.hpp"
#include "apd/zoo.hpp"

namespace apd {

namespace fs = std::filesystem;
using json = nlohmann::json;

void RunManifest::validate() const {
  solver.validate();
  if (replications < 1) throw std::invalid_argument("manifest: replications >= 1");
  if (parallelism < 1) throw std::invalid_argument("manifest: parallelism >= 1");
  if (epsilon < 0.0) throw std::invalid_argument("manifest: epsilon >= 0");
  if (out_dir.empty()) throw std::invalid_argument("manifest: out_dir required");
  if (ref_policy == RefPolicy::injected && !injected_ref)
    throw std::invalid_argument("manifest: injected reference policy without a reference");
}

namespace {

void append_cell(std::string& row, std::optional<double> v) {
  char buf[40];
  if (v) {
    std::snprintf(buf, sizeof(buf), "%.12g", *v);
    row += buf;
  }
  row += ',';
}

}  // namespace

std::string render_csv(const std::vector<IterationRecord>& records, bool timing) {
  std::string out =
      "k,elapsed_s,tau,sigma,theta,inner_steps,ek,gap,subopt,infeas,"
      "grad_x_evals,grad_y_evals\n";
  char buf[64];
  for (const auto& r : records) {
    std::string row;
    std::snprintf(buf, sizeof(buf), "%ld,", r.k);
    row += buf;
    append_cell(row, timing ? r.elapsed : 0.0);
    append_cell(row, r.tau);
    append_cell(row, r.sigma);
    append_cell(row, r.theta);
    std::snprintf(buf, sizeof(buf), "%d,", r.inner_steps);
    row += buf;
    append_cell(row, r.ek_value);
    append_cell(row, r.gap_vs_ref);
    append_cell(row, r.subopt);
    append_cell(row, r.infeas);
    std::snprintf(buf, sizeof(buf), "%lld,%lld",
                  static_cast<long long>(r.grad_x_evals),
                  static_cast<long long>(r.grad_y_evals));
    row += buf;
    out += row;
    out += '\n';
  }
  return out;
}

double qcqp_slater_dual_bound(const QCQPInstance& inst, const ConicProblem& p) {
  // objective-only auxiliary problem: one constraint that is always inactive
  ConicProblem aux = p;
  aux.dim_m = 1;
  aux.C_G.reset();
  aux.L_G.reset();
  aux.G_value = [](const Vec&) { return Vec::Constant(1, -1.0); };
  aux.G_jacobian_T_apply = [n = inst.n](const Vec&, const Vec&) {
    return Vec::Zero(n);
  };
  SaddleOracle ao = build_saddle_from_conic(aux);
  SolverConfig cfg = default_config(ao, Algorithm::apdb);
  cfg.mu = inst.mu();
  cfg.tau0 = 1.0;
  cfg.gamma0 = 1.0;
  cfg.tol = 1e-11;
  cfg.max_outer = 50000;
  const SolveReport rep = run_apdb(ao, cfg, Vec::Zero(inst.n), Vec::Zero(1));
  const double q_lower =
      box_lower_bound(p, rep.x_final, -inst.box_radius, inst.box_radius);

  const Vec x_slater = Vec::Zero(inst.n);
  return dual_bound_slater(p, x_slater, q_lower);
}

namespace {

struct BuiltProblem {
  SaddleOracle oracle;      // the oracle the measured run uses
  SaddleOracle ref_oracle;  // oracle for the long-run reference
  Vec x0, y0;
  std::optional<ConicProblem> conic;
  std::optional<Mat> game_A;
  std::optional<KernelSVMInstance> svm_inst;
  std::vector<Mat> svm_K_full;
  std::vector<int> svm_test_index;
  Vec svm_test_labels;
};

BuiltProblem build_problem(const RunManifest& man, std::uint64_t rep_seed,
                           SolverConfig& cfg) {
  BuiltProblem bp;
  switch (man.problem.kind) {
    case ProblemSpec::Kind::qcqp: {
      const auto& q = man.problem.qcqp;
      const QCQPInstance inst = gen_qcqp(q.n, q.m, rep_seed, q.strongly_convex);
      bp.conic = qcqp_to_conic(inst);
      bp.ref_oracle = build_saddle_from_conic(*bp.conic);
      if (cfg.algorithm == Algorithm::apd) {
        const double B = qcqp_slater_dual_bound(inst, *bp.conic);
        bp.oracle = build_saddle_from_conic(*bp.conic, B);
      } else {
        bp.oracle = bp.ref_oracle;
      }
      bp.x0 = Vec::Zero(q.n);
      bp.y0 = Vec::Zero(q.m);
      break;
    }
    case ProblemSpec::Kind::svm: {
      const auto& s = man.problem.svm;
      Dataset data;
      int n_test;
      if (s.csv_path.empty()) {
        data = make_blobs(s.n_train + s.n_test, s.separation, rep_seed);
        n_test = s.n_test;
      } else {
        data = load_csv_dataset(s.csv_path, s.label_column);
        n_test = static_cast<int>(data.labels.size()) / 5;
      }
      const int n = static_cast<int>(data.labels.size());
      const int n_tr = n - n_test;
      bp.svm_K_full = build_kernel_matrices(data, standard_kernel_trio());
      std::vector<int> train_index;
      for (int i = 0; i < n_tr; ++i) train_index.push_back(i);
      for (int i = n_tr; i < n; ++i) bp.svm_test_index.push_back(i);
      Vec labels_train(n_tr);
      for (int i = 0; i < n_tr; ++i) labels_train[i] = data.labels[i];
      bp.svm_test_labels.resize(n_test);
      for (int i = 0; i < n_test; ++i) bp.svm_test_labels[i] = data.labels[n_tr + i];
      const double C = s.variant == SvmVariant::l1 ? s.C : kInf;
      const double lambda = s.variant == SvmVariant::l1 ? 0.0 : s.lambda;
      bp.svm_inst = make_svm_instance(bp.svm_K_full, labels_train, train_index,
                                      s.variant, C, lambda);
      bp.oracle = build_svm_saddle(*bp.svm_inst);
      bp.ref_oracle = bp.oracle;
      bp.x0 = Vec::Zero(n_tr);
      bp.y0 = Vec::Constant(3, 1.0 / 3.0);
      break;
    }
    case ProblemSpec::Kind::game: {
      const auto& g = man.problem.game;
      Mat A;
      if (g.rps) {
        A = rps_matrix();
      } else {
        Rng rng(rep_seed);
        A.resize(g.rows, g.cols);
        for (int i = 0; i < g.rows; ++i)
          for (int j = 0; j < g.cols; ++j) A(i, j) = rng.gaussian();
      }
      bp.game_A = A;
      bp.oracle = matrix_game(A);
      bp.ref_oracle = bp.oracle;
      bp.x0 = Vec::Zero(A.rows());
      bp.x0[0] = 1.0;  // vertex start; the centroid can already be the saddle
      bp.y0 = Vec::Zero(A.cols());
      bp.y0[0] = 1.0;
      break;
    }
  }
  // constant-step runs take their admissible initialization from the
  // curvature constants unless the caller pinned the steps explicitly
  if (man.auto_steps && cfg.algorithm == Algorithm::apd && bp.oracle.lipschitz) {
    const auto& lip = *bp.oracle.lipschitz;
    const StepSizeRecipe r = initial_steps_recipe(lip, std::max(lip.L_yx, 1e-12));
    cfg.tau0 = r.tau0;
    cfg.gamma0 = r.gamma0;
    cfg.delta = r.delta;
    cfg.c_alpha = r.c_alpha;
    cfg.c_beta = r.c_beta;
  }
  return bp;
}

std::optional<Reference> make_reference(const RunManifest& man,
                                        const BuiltProblem& bp,
                                        const SolverConfig& cfg) {
  switch (man.ref_policy) {
    case RefPolicy::none: return std::nullopt;
    case RefPolicy::injected: return man.injected_ref;
    case RefPolicy::long_run: break;
  }
  SolverConfig ref_cfg = default_config(bp.ref_oracle, Algorithm::apdb);
  ref_cfg.mu = cfg.effective_mu(bp.ref_oracle);
  ref_cfg.tau0 = std::max(cfg.tau0, 1e-2);
  ref_cfg.tau_max = 10.0;  // non-monotone steps; only accuracy matters here
  ref_cfg.gamma0 = cfg.gamma0;
  ref_cfg.max_outer = std::min<long>(100 * cfg.max_outer, 400000);
  ref_cfg.tol = std::max(man.epsilon * 1e-4, 1e-13);
  const SolveReport rep = run_apdb(bp.ref_oracle, ref_cfg, bp.x0, bp.y0);
  return Reference{rep.x_final, rep.y_final};
}

ConvergenceLog run_replication(const RunManifest& man, std::uint64_t rep_seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SolverConfig cfg = man.solver;
  BuiltProblem bp = build_problem(man, rep_seed, cfg);
  const std::optional<Reference> ref = make_reference(man, bp, cfg);

  std::optional<double> rho_ref;
  std::optional<double> l_ref;
  if (ref) {
    if (bp.conic) rho_ref = bp.conic->rho(ref->x);
    l_ref = bp.oracle.lagrangian(ref->x, ref->y);
  }

  SolveCallbacks cb;
  const double eps = man.epsilon;
  if (bp.conic) {
    const ConicProblem& p = *bp.conic;
    cb.on_iteration = [&p, rho_ref, eps](const IterationView& v) {
      const OptimMetrics m = optim_metrics(p, v.x, rho_ref);
      v.record.subopt = m.subopt;
      v.record.infeas = m.infeas;
      if (eps > 0.0 && m.subopt)
        return std::max(*m.subopt, m.mean_violation) <= eps;
      return false;
    };
  } else if (bp.game_A) {
    const Mat A = *bp.game_A;
    cb.on_iteration = [A, eps](const IterationView& v) {
      const double sg = matrix_game_sup_gap(A, v.x_erg, v.y_erg);
      v.record.subopt = sg;
      return eps > 0.0 && sg <= eps;
    };
  } else if (l_ref && std::isfinite(*l_ref)) {
    const SaddleOracle& o = bp.oracle;
    const double lstar = *l_ref;
    cb.on_iteration = [&o, lstar, eps](const IterationView& v) {
      const double l = o.lagrangian(v.x, v.y);
      const double rel = std::abs(l - lstar) / std::max(1.0, std::abs(lstar));
      v.record.subopt = rel;
      return eps > 0.0 && rel <= eps;
    };
  }

  const SolveReport rep = solve(bp.oracle, cfg, bp.x0, bp.y0, ref, cb);

  ConvergenceLog log;
  log.records = rep.records;
  log.status = rep.status;
  log.evals = rep.evals;
  if (!rep.records.empty()) {
    const auto& last = rep.records.back();
    log.final_gap = last.gap_vs_ref;
    log.final_subopt = last.subopt;
    log.final_infeas = last.infeas;
  }
  // slope of the per-iteration stop metric over the trailing decade
  std::vector<double> metric;
  for (const auto& r : rep.records)
    metric.push_back(r.subopt ? *r.subopt : (r.gap_vs_ref ? *r.gap_vs_ref : 0.0));
  const long K = static_cast<long>(metric.size());
  if (K >= 20) {
    try {
      log.fitted_slope = rate_fit_range(metric, std::max<long>(2, K / 10), K);
    } catch (const std::exception&) {
      log.fitted_slope.reset();
    }
  }
  log.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (bp.svm_inst && rep.status != Status::diverged) {
    try {
      const PredictionResult pred = predict_labels(
          *bp.svm_inst, rep.x_final, rep.y_final, bp.svm_K_full, bp.svm_test_index);
      int hits = 0;
      for (Eigen::Index i = 0; i < bp.svm_test_labels.size(); ++i)
        if (pred.labels[i] == bp.svm_test_labels[i]) ++hits;
      log.tsa = static_cast<double>(hits) /
                static_cast<double>(bp.svm_test_labels.size());
    } catch (const std::exception& e) {
      std::fprintf(stderr, "[svm] prediction skipped: %s\n", e.what());
    }
  }
  return log;
}

json counters_json(const EvalCounters& c) {
  return json{{"phi", c.phi},
              {"grad_x", c.grad_x},
              {"grad_y", c.grad_y},
              {"prox_f", c.prox_f},
              {"prox_h", c.prox_h}};
}

json config_json(const RunManifest& man) {
  const SolverConfig& s = man.solver;
  json j{{"algorithm", to_string(s.algorithm)},
         {"tau_bar", s.tau0},
         {"gamma0", s.gamma0},
         {"delta", s.delta},
         {"c_alpha", s.c_alpha},
         {"c_beta", s.c_beta},
         {"eta", s.eta},
         {"max_outer", s.max_outer},
         {"max_inner", s.max_inner},
         {"tol", s.tol},
         {"ek_variant", to_string(s.ek_variant)},
         {"seed", man.seed},
         {"reps", man.replications},
         {"parallel", man.parallelism},
         {"epsilon", man.epsilon},
         {"ref_policy", man.ref_policy == RefPolicy::none
                            ? "none"
                            : (man.ref_policy == RefPolicy::long_run ? "long_run"
                                                                     : "injected")}};
  if (s.mu) j["mu"] = *s.mu;
  if (s.tau_max) j["tau_max"] = *s.tau_max;
  if (s.restart_period) j["restart_period"] = *s.restart_period;
  return j;
}

}  // namespace

int cli_run(const RunManifest& man) {
  man.validate();
  fs::create_directories(man.out_dir);
  {
    std::ofstream probe(fs::path(man.out_dir) / ".writable");
    if (!probe)
      throw std::runtime_error("cli_run: output directory is not writable");
  }
  fs::remove(fs::path(man.out_dir) / ".writable");

  const int reps = man.replications;
  std::vector<ConvergenceLog> logs(reps);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= reps) return;
      logs[r] = run_replication(man, man.seed + static_cast<std::uint64_t>(r));
    }
  };
  const int workers = std::min(man.parallelism, reps);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json summary;
  summary["config"] = config_json(man);
  summary["replications"] = json::array();
  bool all_ok = true;
  for (int r = 0; r < reps; ++r) {
    const ConvergenceLog& log = logs[r];
    char name[32];
    std::snprintf(name, sizeof(name), "rep%03d.csv", r);
    std::ofstream csv(fs::path(man.out_dir) / name);
    csv << render_csv(log.records, man.timing);

    const bool ok = log.status == Status::converged ||
                    (man.epsilon == 0.0 && man.solver.tol == 0.0 &&
                     log.status == Status::budget_exhausted);
    all_ok = all_ok && ok;
    json jr{{"seed", man.seed + static_cast<std::uint64_t>(r)},
            {"status", to_string(log.status)},
            {"iterations", log.records.size()},
            {"counters", counters_json(log.evals)},
            {"wall_seconds", man.timing ? log.wall_seconds : 0.0}};
    if (log.final_gap) jr["final_gap"] = *log.final_gap;
    if (log.final_subopt) jr["final_subopt"] = *log.final_subopt;
    if (log.final_infeas) jr["final_infeas"] = *log.final_infeas;
    if (log.fitted_slope) jr["fitted_slope"] = *log.fitted_slope;
    if (log.tsa) jr["test_accuracy"] = *log.tsa;
    summary["replications"].push_back(jr);
  }
  summary["all_converged"] = all_ok;
  std::ofstream out(fs::path(man.out_dir) / "summary.json");
  out << summary.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int run_verification(std::uint64_t seed, std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool pass, double worst) {
    out << (pass ? "[PASS] " : "[FAIL] ") << name << " (worst " << worst << ")\n";
    if (!pass) ++failures;
  };

  const auto kits = verification_zoo(seed);
  Rng rng(seed + 99);
  for (const auto& kit : kits) {
    std::vector<std::pair<Vec, Vec>> pts;
    for (int i = 0; i < 20; ++i)
      pts.emplace_back(kit.sample_x_interior(rng), kit.sample_y_interior(rng));
    const double fd = finite_diff_check(kit.oracle, pts, 1e-6);
    report("finite-diff " + kit.name, fd <= 1e-6, fd);

    const ProxSuiteReport pr = prox_inequality_suite(kit.oracle, kit.prox_spec,
                                                     100, seed + 7);
    report("prox-inequality " + kit.name, pr.pass, pr.worst_violation);
  }

  const double moreau = moreau_check(ConeSpec::orthant(), 6, 200, seed + 11);
  report("moreau-orthant", moreau <= 1e-12, moreau);

  // projection idempotence and firm nonexpansiveness on the toolbox
  double worst_idem = 0.0, worst_nonexp = 0.0;
  Vec bsign(8);
  for (int i = 0; i < 8; ++i) bsign[i] = i % 2 == 0 ? 1.0 : -1.0;
  auto probe = [&](auto&& P) {
    for (int s = 0; s < 100; ++s) {
      const Vec u = rng.gaussian_vector(8) * 3.0;
      const Vec v = rng.gaussian_vector(8) * 3.0;
      const Vec Pu = P(u), Pv = P(v);
      worst_idem = std::max(worst_idem, (P(Pu) - Pu).norm());
      worst_nonexp = std::max(worst_nonexp, (Pu - Pv).norm() - (u - v).norm());
    }
  };
  probe([](const Vec& v) { return project_box(v, -1.0, 1.0); });
  probe([](const Vec& v) { return project_simplex(v); });
  probe([&](const Vec& v) { return project_box_hyperplane(v, 1.0, bsign); });
  probe([](const Vec& v) { return project_orthant_ball(v, 2.0); });
  report("projection-idempotence", worst_idem <= 1e-12, worst_idem);
  report("projection-nonexpansive", worst_nonexp <= 1e-12, worst_nonexp);

  const double sched = schedule_identity_worst(seed + 13, 100, 1000);
  report("schedule-identity", sched <= 1e-12, sched);
  return failures;
}

double rates_from_csv(const std::string& path, const std::string& column,
                      long k_min, long k_max) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("rates_from_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("rates_from_csv: empty file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  int col = -1, kcol = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == column) col = static_cast<int>(j);
    if (header[j] == "k") kcol = static_cast<int>(j);
  }
  if (col < 0 || kcol < 0)
    throw std::runtime_error("rates_from_csv: column not found: " + column);
  std::vector<long> ks;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    long k = -1;
    double v = std::nan("");
    for (int j = 0; std::getline(ss, cell, ','); ++j) {
      if (j == kcol) k = std::stol(cell);
      if (j == col && !cell.empty()) v = std::stod(cell);
    }
    const long k1 = k + 1;  // records are 0-indexed
    if (k1 >= k_min && k1 <= k_max && std::isfinite(v)) {
      ks.push_back(k1);
      vals.push_back(v);
    }
  }
  return rate_fit(ks, vals);
}

}  // namespace apd
