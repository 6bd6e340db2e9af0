// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <optional>

#include "apd/config.hpp"
#include "apd/ek.hpp"
#include "apd/main_step.hpp"
#include "apd/report.hpp"
#include "apd/schedule.hpp"

namespace apd {

/// Running weighted mean: avg <- (T*avg + t*x_next)/(T+t); returns T+t.
/// No history is stored, so it stays exact-enough at millions of terms.
double ergodic_update(Vec& avg, double T, const Vec& x_next, double t);

/// L(xbar, y_ref) - L(x_ref, ybar). Infeasible evaluations propagate as +inf
/// rather than throwing. Nonnegative whenever (x_ref, y_ref) is a saddle point.
double gap(const SaddleOracle& o, const Vec& xbar, const Vec& ybar,
           const Vec& x_ref, const Vec& y_ref);

/// (1/tau0) D_X(x, x0) + (1/sigma0) D_Y(y, y0), the certificate numerator.
double distance_bound(const SaddleOracle& o, double tau0, double sigma0,
                      const Vec& x0, const Vec& y0, const Vec& x, const Vec& y);

struct Reference {
  Vec x, y;
};

/// Everything an observer may want per iteration. `record` is the row about
/// to land in the report; metric fields (gap/subopt/infeas) may be filled in.
struct IterationView {
  long k;
  const Vec& x;
  const Vec& y;
  const Vec& x_erg;
  const Vec& y_erg;
  const StepState& step;
  IterationRecord& record;
};

struct SolveCallbacks {
  /// Called after each accepted iteration; return true to stop (converged).
  std::function<bool(const IterationView&)> on_iteration;
};

struct BacktrackParams {
  double delta = 1e-3;
  double c_alpha = 0.998;
  double c_beta = 0.0;
  double eta = 0.7;
  double tau_bar = 1.0;
  double gamma0 = 1.0;
  std::optional<double> tau_max;
  int max_inner = 60;
  EkVariant variant = EkVariant::exact;
};

struct BacktrackStepResult {
  Vec x_next, y_next;
  double tau = 0.0, sigma = 0.0, theta = 0.0;  // accepted trial
  int inner_count = 0;
  double ek = 0.0;
  double alpha_next = 0.0, beta_next = 0.0;
  Vec grad_y_fresh;  // grad_y Phi(x_k, y_k), for the caller's cache
  bool accepted = false;  // false: max_inner exhausted
};

/// One backtracked outer iteration from anchors (x_k, y_k): shrink the trial
/// tau by eta until E_k(x_{k+1}, y_{k+1}) <= -delta [D_X/tau_k + D_Y/sigma_k].
/// `st` supplies tau (first trial), gamma, sigma_prev and the cached previous
/// gradient; alpha_k = c_alpha / sigma_prev and beta_k = c_beta / sigma_prev
/// are recomputed here and held fixed across trials.
BacktrackStepResult backtrack_outer_step(const SaddleOracle& o,
                                         const StepState& st,
                                         const BacktrackParams& p,
                                         const Vec& x_k, const Vec& y_k);

/// Constant/accelerated-step solver with known Lipschitz constants.
/// Refuses to start when the oracle has none (use run_apdb then).
SolveReport run_apd(const SaddleOracle& o, const SolverConfig& cfg,
                    const Vec& x0, const Vec& y0,
                    const std::optional<Reference>& ref = std::nullopt,
                    const SolveCallbacks& cb = {});

/// Backtracking solver; tau0 is the cap tau_bar, sigma_{-1} = gamma0 * tau_bar.
SolveReport run_apdb(const SaddleOracle& o, const SolverConfig& cfg,
                     const Vec& x0, const Vec& y0,
                     const std::optional<Reference>& ref = std::nullopt,
                     const SolveCallbacks& cb = {});

/// Backtracking solver with the x-update performed first and the matching
/// test function; for constrained problems without a global curvature bound.
SolveReport run_apdb_switched(const SaddleOracle& o, const SolverConfig& cfg,
                              const Vec& x0, const Vec& y0,
                              const std::optional<Reference>& ref = std::nullopt,
                              const SolveCallbacks& cb = {});

/// Dispatch on cfg.algorithm.
SolveReport solve(const SaddleOracle& o, const SolverConfig& cfg, const Vec& x0,
                  const Vec& y0,
                  const std::optional<Reference>& ref = std::nullopt,
                  const SolveCallbacks& cb = {});

}  // namespace apd
