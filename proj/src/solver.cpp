// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

namespace apd {

double ergodic_update(Vec& avg, double T, const Vec& x_next, double t) {
  if (T < 0.0 || t <= 0.0)
    throw std::invalid_argument("ergodic_update: need T >= 0 and t > 0");
  const double T_next = T + t;
  if (T == 0.0) {
    avg = x_next;
  } else {
    avg += (t / T_next) * (x_next - avg);
  }
  return T_next;
}

double gap(const SaddleOracle& o, const Vec& xbar, const Vec& ybar,
           const Vec& x_ref, const Vec& y_ref) {
  const double l_bar = o.lagrangian(xbar, y_ref);
  const double l_ref = o.lagrangian(x_ref, ybar);
  if (!std::isfinite(l_bar) || !std::isfinite(l_ref)) return kInf;
  return l_bar - l_ref;
}

double distance_bound(const SaddleOracle& o, double tau0, double sigma0,
                      const Vec& x0, const Vec& y0, const Vec& x, const Vec& y) {
  return o.geom_x.distance(x, x0) / tau0 + o.geom_y.distance(y, y0) / sigma0;
}

namespace {

using Clock = std::chrono::steady_clock;

struct LoopShared {
  // solve-wide bookkeeping shared by the three runners
  std::shared_ptr<EvalCounters> counters;
  SaddleOracle o;  // counting wrapper
  double sigma0 = 0.0;
  double mu = 0.0;
  Vec x, y, ex, ey;
  double T = 0.0;
  long since_restart = 0;
  bool primed = false;  // next extrapolation collapses to the fresh gradient
  Clock::time_point t_start = Clock::now();

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - t_start).count();
  }
};

bool default_stop(const SolverConfig& cfg, const LoopShared& ls,
                  const std::optional<Reference>& ref, const Vec& x_prev,
                  const Vec& y_prev, IterationRecord& rec) {
  if (ref) {
    const double g = gap(ls.o, ls.ex, ls.ey, ref->x, ref->y);
    rec.gap_vs_ref = g;
    if (cfg.tol > 0.0 && std::abs(g) <= cfg.tol) return true;
    return false;
  }
  if (cfg.tol > 0.0 && rec.k >= 1) {
    const double num = std::sqrt((ls.x - x_prev).squaredNorm() +
                                 (ls.y - y_prev).squaredNorm());
    const double den =
        std::max(1.0, std::sqrt(x_prev.squaredNorm() + y_prev.squaredNorm()));
    return num / den <= cfg.tol;
  }
  return false;
}

void apply_restart(const SolverConfig& cfg, LoopShared& ls, StepState& st) {
  st.tau = cfg.tau0;
  st.tau_prev = cfg.tau0;
  st.gamma = cfg.gamma0;
  st.sigma_prev = ls.sigma0;
  ls.T = 0.0;
  ls.ex.setZero();
  ls.ey.setZero();
  ls.since_restart = 0;
  ls.primed = true;  // the new run starts from (x_{-1}, y_{-1}) = (x_0, y_0)
}

SolveReport finish(LoopShared& ls, SolveReport&& rep, Status status,
                   std::string diag = "") {
  rep.status = status;
  rep.diagnostic = std::move(diag);
  rep.x_final = ls.x;
  rep.y_final = ls.y;
  rep.x_ergodic = ls.T > 0.0 ? ls.ex : ls.x;
  rep.y_ergodic = ls.T > 0.0 ? ls.ey : ls.y;
  rep.evals = *ls.counters;
  rep.outer_iterations = static_cast<long>(rep.records.size());
  return std::move(rep);
}

LoopShared init_shared(const SaddleOracle& o_raw, const SolverConfig& cfg,
                       const Vec& x0, const Vec& y0) {
  LoopShared ls;
  ls.counters = std::make_shared<EvalCounters>();
  ls.o = with_counting(o_raw, ls.counters);
  ls.sigma0 = cfg.sigma0();
  ls.mu = cfg.effective_mu(o_raw);
  ls.x = x0;
  ls.y = y0;
  ls.ex = Vec::Zero(x0.size());
  ls.ey = Vec::Zero(y0.size());
  return ls;
}

// The computed test value is meaningful only above machine epsilon times
// its cancellation scale; rejecting inside that band would shrink tau on
// pure roundoff and break the step floor. Acceptance therefore carries a
// noise-sized slack (well under the 1e-12 certificate tolerance at desk
// problem magnitudes).
double acceptance_slack(double noise_scale) {
  return 8.0 * std::numeric_limits<double>::epsilon() * noise_scale;
}

// A trial whose displacement sits at roundoff scale is numerically
// stationary; every term of the test is then evaluation noise whose scale
// the value-based slack cannot see (gradient evaluations cancel internally),
// so such trials are accepted outright.
bool negligible_displacement(const Vec& x_c, const Vec& x_k, const Vec& y_c,
                             const Vec& y_k) {
  constexpr double noise = 64.0 * std::numeric_limits<double>::epsilon();
  return (x_c - x_k).norm() <= noise * (1.0 + x_k.norm()) &&
         (y_c - y_k).norm() <= noise * (1.0 + y_k.norm());
}

// Inner trial loop shared by run_apdb and the public backtrack_outer_step.
// `g` is grad_y Phi(x_k, y_k); `primed` collapses the extrapolation.
BacktrackStepResult apdb_trials(const SaddleOracle& o, const StepState& st,
                                const BacktrackParams& p, const Vec& x_k,
                                const Vec& y_k, const Vec& g, bool primed) {
  BacktrackStepResult r;
  r.grad_y_fresh = g;
  const double alpha_k = p.c_alpha / st.sigma_prev;
  const double beta_k = p.c_beta / st.sigma_prev;
  double tau = st.tau;
  for (int inner = 1; inner <= p.max_inner; ++inner) {
    const double sigma = st.gamma * tau;
    const double theta = st.sigma_prev / sigma;
    const double a_next = p.c_alpha / sigma;
    const double b_next = p.c_beta > 0.0 ? p.c_beta / sigma : 0.0;
    const Vec s = primed ? g : Vec((1.0 + theta) * g - theta * st.prev_grad_y);
    const Vec y_c = o.prox_h(y_k, s, sigma);
    const Vec gx = o.grad_x(x_k, y_c);
    const Vec x_c = o.prox_f(x_k, gx, tau);

    EkContext ctx;
    ctx.x_k = x_k;
    ctx.y_k = y_k;
    ctx.grad_y_at_k = g;
    ctx.alpha_k = alpha_k;
    ctx.beta_k = beta_k;
    ctx.tau_k = tau;
    ctx.sigma_k = sigma;
    ctx.theta_k = theta;
    double noise = 0.0;
    const double ek =
        p.variant == EkVariant::exact
            ? test_function_ek(o, ctx, x_c, y_c, a_next, b_next, &gx, &noise)
            : test_function_ek_tilde(o, ctx, x_c, y_c, a_next, b_next, &gx, &noise);
    const double rhs = -p.delta * (o.geom_x.distance(x_c, x_k) / tau +
                                   o.geom_y.distance(y_c, y_k) / sigma);
    r.inner_count = inner;
    r.ek = ek;
    if (ek <= rhs + acceptance_slack(noise) ||
        negligible_displacement(x_c, x_k, y_c, y_k)) {
      r.x_next = x_c;
      r.y_next = y_c;
      r.tau = tau;
      r.sigma = sigma;
      r.theta = theta;
      r.alpha_next = a_next;
      r.beta_next = b_next;
      r.accepted = true;
      return r;
    }
    tau *= p.eta;
  }
  r.tau = tau;
  return r;  // accepted == false
}

// Switched trial loop: x-update first with extrapolated primal gradients,
// then the y-update at the fresh primal point.
BacktrackStepResult apdb_switched_trials(const SaddleOracle& o,
                                         const StepState& st,
                                         const BacktrackParams& p,
                                         const Vec& x_k, const Vec& y_k,
                                         const Vec& g, bool primed) {
  BacktrackStepResult r;
  r.grad_y_fresh = g;  // grad_x Phi(x_k, y_k) in this variant
  const double alpha_k = p.c_alpha / st.tau_prev;
  const double beta_k = p.gamma0 * p.c_beta / st.sigma_prev;
  double tau = st.tau;
  for (int inner = 1; inner <= p.max_inner; ++inner) {
    const double sigma = st.gamma * tau;
    const double theta = st.sigma_prev / sigma;
    const double a_next = p.c_alpha / tau;
    const double b_next = p.gamma0 * p.c_beta / sigma;
    const Vec s = primed ? g : Vec((1.0 + theta) * g - theta * st.prev_grad_y);
    const Vec x_c = o.prox_f(x_k, s, tau);
    const Vec gy = o.grad_y(x_c, y_k);
    const Vec y_c = o.prox_h(y_k, gy, sigma);

    EkContext ctx;
    ctx.x_k = x_k;
    ctx.y_k = y_k;
    ctx.alpha_k = alpha_k;
    ctx.beta_k = beta_k;
    ctx.tau_k = tau;
    ctx.sigma_k = sigma;
    ctx.theta_k = theta;
    double noise = 0.0;
    const double ek = test_function_ek_switched(o, ctx, x_c, y_c, a_next, b_next,
                                                g, nullptr, &noise);
    const double rhs = -p.delta * (o.geom_x.distance(x_c, x_k) / tau +
                                   o.geom_y.distance(y_c, y_k) / sigma);
    r.inner_count = inner;
    r.ek = ek;
    if (ek <= rhs + acceptance_slack(noise) ||
        negligible_displacement(x_c, x_k, y_c, y_k)) {
      r.x_next = x_c;
      r.y_next = y_c;
      r.tau = tau;
      r.sigma = sigma;
      r.theta = theta;
      r.alpha_next = a_next;
      r.beta_next = b_next;
      r.accepted = true;
      return r;
    }
    tau *= p.eta;
  }
  r.tau = tau;
  return r;
}

BacktrackParams params_from_config(const SolverConfig& cfg) {
  BacktrackParams p;
  p.delta = cfg.delta;
  p.c_alpha = cfg.c_alpha;
  p.c_beta = cfg.c_beta;
  p.eta = cfg.eta;
  p.tau_bar = cfg.tau0;
  p.gamma0 = cfg.gamma0;
  p.tau_max = cfg.tau_max;
  p.max_inner = cfg.max_inner;
  p.variant = cfg.ek_variant;
  return p;
}

// Shared backtracking driver; `switched` picks the trial loop and the
// matching initial gradient cache.
SolveReport run_backtracking(const SaddleOracle& o_raw, const SolverConfig& cfg,
                             const Vec& x0, const Vec& y0,
                             const std::optional<Reference>& ref,
                             const SolveCallbacks& cb, bool switched) {
  o_raw.validate();
  cfg.validate(&o_raw);
  LoopShared ls = init_shared(o_raw, cfg, x0, y0);
  const BacktrackParams p = params_from_config(cfg);

  SolveReport rep;
  rep.tau0 = cfg.tau0;
  rep.sigma0 = ls.sigma0;

  StepState st;
  st.tau = cfg.tau0;
  st.tau_prev = cfg.tau0;
  st.gamma = cfg.gamma0;
  st.sigma_prev = ls.sigma0;
  st.prev_grad_y =
      switched ? ls.o.grad_x(ls.x, ls.y) : ls.o.grad_y(ls.x, ls.y);

  for (long k = 0; k < cfg.max_outer; ++k) {
    const Vec g = switched ? ls.o.grad_x(ls.x, ls.y) : ls.o.grad_y(ls.x, ls.y);
    const BacktrackStepResult bt =
        switched ? apdb_switched_trials(ls.o, st, p, ls.x, ls.y, g, ls.primed)
                 : apdb_trials(ls.o, st, p, ls.x, ls.y, g, ls.primed);
    ls.primed = false;
    if (!bt.accepted) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "backtracking exhausted max_inner=%d at k=%ld; last E_k=%.6g "
                    "at tau=%.6g",
                    cfg.max_inner, k, bt.ek, bt.tau);
      return finish(ls, std::move(rep), Status::diverged, buf);
    }
    if (!is_finite(bt.x_next) || !is_finite(bt.y_next))
      return finish(ls, std::move(rep), Status::diverged,
                    "iterate became non-finite");

    st.k = k;
    st.tau = bt.tau;
    st.sigma = bt.sigma;
    st.theta = bt.theta;
    st.t = bt.sigma / ls.sigma0;

    const Vec x_prev = ls.x;
    const Vec y_prev = ls.y;
    ls.x = bt.x_next;
    ls.y = bt.y_next;
    st.prev_grad_y = g;
    const double T_next = ergodic_update(ls.ex, ls.T, ls.x, st.t);
    ergodic_update(ls.ey, ls.T, ls.y, st.t);
    ls.T = T_next;
    st.T = ls.T;

    IterationRecord rec;
    rec.k = k;
    rec.tau = st.tau;
    rec.sigma = st.sigma;
    rec.theta = st.theta;
    rec.inner_steps = bt.inner_count;
    rec.ek_value = bt.ek;
    rec.elapsed = ls.elapsed();
    rec.grad_x_evals = ls.counters->grad_x;
    rec.grad_y_evals = ls.counters->grad_y;

    bool stop = default_stop(cfg, ls, ref, x_prev, y_prev, rec);
    rep.records.push_back(rec);
    if (cb.on_iteration) {
      IterationView view{k, ls.x, ls.y, ls.ex, ls.ey, st, rep.records.back()};
      if (cb.on_iteration(view)) stop = true;
    }
    if (stop) return finish(ls, std::move(rep), Status::converged);

    if (cfg.restart_period && ++ls.since_restart >= *cfg.restart_period) {
      apply_restart(cfg, ls, st);
      continue;
    }
    const double gamma_next = st.gamma * (1.0 + ls.mu * st.tau);
    const double tau_next =
        cfg.tau_max ? nonmonotone_tau_next(st.tau, st.tau_prev, st.gamma,
                                           gamma_next, *cfg.tau_max)
                    : st.tau * std::sqrt(st.gamma / gamma_next);
    st.tau_prev = st.tau;
    st.sigma_prev = st.sigma;
    st.gamma = gamma_next;
    st.tau = tau_next;
  }
  return finish(ls, std::move(rep), Status::budget_exhausted);
}

}  // namespace

BacktrackStepResult backtrack_outer_step(const SaddleOracle& o,
                                         const StepState& st,
                                         const BacktrackParams& p,
                                         const Vec& x_k, const Vec& y_k) {
  const Vec g = o.grad_y(x_k, y_k);
  return apdb_trials(o, st, p, x_k, y_k, g, /*primed=*/false);
}

SolveReport run_apd(const SaddleOracle& o_raw, const SolverConfig& cfg,
                    const Vec& x0, const Vec& y0,
                    const std::optional<Reference>& ref,
                    const SolveCallbacks& cb) {
  o_raw.validate();
  cfg.validate(&o_raw);
  if (!o_raw.lipschitz)
    throw std::invalid_argument(
        "run_apd: the oracle carries no Lipschitz constants, so no admissible "
        "constant step sizes exist; use the backtracking solver (apdb) instead");
  LoopShared ls = init_shared(o_raw, cfg, x0, y0);
  if (!check_initial_stepsizes(*o_raw.lipschitz, cfg.delta, cfg.c_alpha,
                               cfg.c_beta, cfg.tau0, ls.sigma0)) {
    std::fprintf(stderr,
                 "[apd] warning: initial step sizes violate the admissibility "
                 "conditions; proceeding without the ergodic guarantee\n");
  }

  SolveReport rep;
  rep.tau0 = cfg.tau0;
  rep.sigma0 = ls.sigma0;

  StepState st;
  st.tau = cfg.tau0;
  st.tau_prev = cfg.tau0;
  st.gamma = cfg.gamma0;
  st.sigma_prev = ls.sigma0;
  st.prev_grad_y = ls.o.grad_y(ls.x, ls.y);

  for (long k = 0; k < cfg.max_outer; ++k) {
    st.k = k;
    st.sigma = st.gamma * st.tau;
    st.theta = st.sigma_prev / st.sigma;

    const Vec g = ls.o.grad_y(ls.x, ls.y);
    const Vec s =
        ls.primed ? g : Vec((1.0 + st.theta) * g - st.theta * st.prev_grad_y);
    ls.primed = false;
    const Vec y_next = ls.o.prox_h(ls.y, s, st.sigma);
    const Vec gx = ls.o.grad_x(ls.x, y_next);
    const Vec x_next = ls.o.prox_f(ls.x, gx, st.tau);
    if (!is_finite(x_next) || !is_finite(y_next))
      return finish(ls, std::move(rep), Status::diverged,
                    "iterate became non-finite");

    st.t = ls.mu > 0.0 ? st.sigma / ls.sigma0 : 1.0;
    const Vec x_prev = ls.x;
    const Vec y_prev = ls.y;
    ls.x = x_next;
    ls.y = y_next;
    st.prev_grad_y = g;
    const double T_next = ergodic_update(ls.ex, ls.T, ls.x, st.t);
    ergodic_update(ls.ey, ls.T, ls.y, st.t);
    ls.T = T_next;
    st.T = ls.T;

    IterationRecord rec;
    rec.k = k;
    rec.tau = st.tau;
    rec.sigma = st.sigma;
    rec.theta = st.theta;
    rec.inner_steps = 0;
    rec.elapsed = ls.elapsed();
    rec.grad_x_evals = ls.counters->grad_x;
    rec.grad_y_evals = ls.counters->grad_y;

    bool stop = default_stop(cfg, ls, ref, x_prev, y_prev, rec);
    rep.records.push_back(rec);
    if (cb.on_iteration) {
      IterationView view{k, ls.x, ls.y, ls.ex, ls.ey, st, rep.records.back()};
      if (cb.on_iteration(view)) stop = true;
    }
    if (stop) return finish(ls, std::move(rep), Status::converged);

    if (cfg.restart_period && ++ls.since_restart >= *cfg.restart_period) {
      apply_restart(cfg, ls, st);
      continue;
    }
    const auto [gamma_next, tau_next] = apd_schedule_next(st.gamma, st.tau, ls.mu);
    st.tau_prev = st.tau;
    st.sigma_prev = st.sigma;
    st.gamma = gamma_next;
    st.tau = tau_next;
  }
  return finish(ls, std::move(rep), Status::budget_exhausted);
}

SolveReport run_apdb(const SaddleOracle& o, const SolverConfig& cfg,
                     const Vec& x0, const Vec& y0,
                     const std::optional<Reference>& ref,
                     const SolveCallbacks& cb) {
  return run_backtracking(o, cfg, x0, y0, ref, cb, /*switched=*/false);
}

SolveReport run_apdb_switched(const SaddleOracle& o, const SolverConfig& cfg,
                              const Vec& x0, const Vec& y0,
                              const std::optional<Reference>& ref,
                              const SolveCallbacks& cb) {
  return run_backtracking(o, cfg, x0, y0, ref, cb, /*switched=*/true);
}

SolveReport solve(const SaddleOracle& o, const SolverConfig& cfg, const Vec& x0,
                  const Vec& y0, const std::optional<Reference>& ref,
                  const SolveCallbacks& cb) {
  switch (cfg.algorithm) {
    case Algorithm::apd: return run_apd(o, cfg, x0, y0, ref, cb);
    case Algorithm::apdb: return run_apdb(o, cfg, x0, y0, ref, cb);
    case Algorithm::apdb_switched:
      return run_apdb_switched(o, cfg, x0, y0, ref, cb);
  }
  throw std::logic_error("solve: unknown algorithm");
}

const char* to_string(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::budget_exhausted: return "budget_exhausted";
    case Status::diverged: return "diverged";
  }
  return "?";
}

}  // namespace apd
