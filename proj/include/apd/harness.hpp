// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apd/conic.hpp"
#include "apd/qcqp.hpp"
#include "apd/report.hpp"
#include "apd/solver.hpp"
#include "apd/svm.hpp"

namespace apd {

struct QcqpSpec {
  int n = 50;
  int m = 5;
  bool strongly_convex = true;
};

struct SvmSpec {
  SvmVariant variant = SvmVariant::l2;
  double C = 1.0;        // l1
  double lambda = 1.0;   // l2
  int n_train = 60;
  int n_test = 20;
  double separation = 4.0;
  std::string csv_path;  // empty: synthetic blobs
  std::string label_column = "label";
};

struct GameSpec {
  bool rps = true;
  int rows = 3;
  int cols = 3;
};

struct ProblemSpec {
  enum class Kind { qcqp, svm, game };
  Kind kind = Kind::qcqp;
  QcqpSpec qcqp;
  SvmSpec svm;
  GameSpec game;
};

enum class RefPolicy { none, long_run, injected };

/// Full description of one experiment: problem, solver, outputs, reference
/// policy, replication count and parallelism degree. Replication r uses seed
/// seed + r, so seeds are distinct by construction.
struct RunManifest {
  ProblemSpec problem;
  SolverConfig solver;
  std::string out_dir;
  RefPolicy ref_policy = RefPolicy::long_run;
  std::optional<Reference> injected_ref;  // used when ref_policy == injected
  int replications = 1;
  int parallelism = 1;
  std::uint64_t seed = 1;
  double epsilon = 1e-6;  // metric-based termination target (0 disables)
  bool timing = false;    // real elapsed_s column (forfeits byte determinism)
  // constant-step runs derive admissible (tau0, sigma0, c's) from the
  // problem's curvature constants unless the caller pinned them
  bool auto_steps = true;

  void validate() const;
};

struct ConvergenceLog {
  std::vector<IterationRecord> records;
  Status status = Status::budget_exhausted;
  EvalCounters evals;
  std::optional<double> final_gap, final_subopt, final_infeas;
  std::optional<double> fitted_slope;  // log-log slope of the stop metric
  std::optional<double> tsa;           // SVM test-set accuracy
  double wall_seconds = 0.0;
};

/// Fixed per-iteration schema:
/// k,elapsed_s,tau,sigma,theta,inner_steps,ek,gap,subopt,infeas,
/// grad_x_evals,grad_y_evals with empty cells for non-applicable metrics.
std::string render_csv(const std::vector<IterationRecord>& records, bool timing);

/// Execute the manifest: replications (optionally in parallel, each an
/// isolated solve), one CSV per replication plus summary.json in out_dir.
/// Returns 0 when every replication reached its stopping target.
int cli_run(const RunManifest& manifest);

/// Slater-based dual-norm bound for a box QCQP: q_lower is certified from an
/// auxiliary objective-only solve; the Slater point is the origin.
double qcqp_slater_dual_bound(const QCQPInstance& inst, const ConicProblem& p);

/// Run the oracle verification suites (finite differences, prox inequality,
/// Moreau decomposition, projection idempotence/nonexpansiveness, schedule
/// identity) across the zoo; prints one line per suite. Returns the number
/// of failures.
int run_verification(std::uint64_t seed, std::ostream& out);

/// Post-hoc slope fit on a CSV produced by cli_run.
double rates_from_csv(const std::string& path, const std::string& column,
                      long k_min, long k_max);

}  // namespace apd
