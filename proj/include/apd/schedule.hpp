// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <utility>

#include "apd/oracle.hpp"
#include "apd/types.hpp"

namespace apd {

/// Live step-size schedule of a run plus the cached extrapolation gradient.
/// Invariants along the iteration: sigma = gamma * tau, theta = sigma_prev /
/// sigma, t = sigma / sigma0, T = sum of past t.
struct StepState {
  long k = 0;
  double tau = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double theta = 1.0;
  double t = 1.0;
  double T = 0.0;
  double sigma_prev = 0.0;
  double tau_prev = 0.0;  // previous accepted tau (non-monotone rule, switched alpha)
  Vec prev_grad_y;        // grad_y Phi at the previous iterate (grad_x for switched runs)
};

/// One application of the accelerated schedule recursion:
/// gamma' = gamma * (1 + mu*tau),  tau' = tau * sqrt(gamma / gamma').
/// The induced (theta, sigma) then satisfy theta' = 1/sqrt(1 + mu*tau),
/// tau' = theta' * tau, sigma' = sigma / theta'.
std::pair<double, double> apd_schedule_next(double gamma, double tau, double mu);

/// Both admissibility inequalities for the initial step sizes:
///   ((1-delta)/tau0 - L_xx) / sigma0 >= L_yx^2 / c_alpha
///   1 - (delta + c_alpha + c_beta) >= (L_yy^2 / c_beta) * sigma0^2
/// with the 0^2/0 = 0 convention when L_yy = 0 and c_beta = 0.
bool check_initial_stepsizes(const LipschitzTriple& lip, double delta,
                             double c_alpha, double c_beta, double tau0,
                             double sigma0);

/// Non-monotone step proposal:
/// min{ tau_k * sqrt((gamma_k/gamma_next) * (1 + tau_k/tau_prev)), tau_max }.
double nonmonotone_tau_next(double tau_k, double tau_prev, double gamma_k,
                            double gamma_next, double tau_max);

/// Initial step sizes tau0 = c_tau * (L_xx + L_yx^2/alpha)^{-1},
/// sigma0 = c_sigma * (alpha + 2 L_yy)^{-1}, together with the canonical
/// multipliers delta = 0, c_alpha = alpha/(alpha + 2 L_yy),
/// c_beta = L_yy/(alpha + 2 L_yy) that make check_initial_stepsizes pass
/// (with equality in both conditions at c_tau = c_sigma = 1).
struct StepSizeRecipe {
  double tau0;
  double sigma0;
  double gamma0;  // sigma0 / tau0
  double delta;
  double c_alpha;
  double c_beta;
};

StepSizeRecipe initial_steps_recipe(const LipschitzTriple& lip, double alpha,
                                    double c_tau = 1.0, double c_sigma = 1.0);

/// The strongly convex pairing tau0 = 1/(2 L_xx), sigma0 = L_xx / L_yx^2
/// (requires L_xx > 0, L_yy = 0); admissible with delta = 0, c_alpha = 1.
StepSizeRecipe strongly_convex_recipe(const LipschitzTriple& lip);

}  // namespace apd
