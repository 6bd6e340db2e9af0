// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace apd {

std::pair<double, double> apd_schedule_next(double gamma, double tau, double mu) {
  if (gamma <= 0.0 || tau <= 0.0 || mu < 0.0)
    throw std::invalid_argument("apd_schedule_next: bad inputs");
  const double gamma_next = gamma * (1.0 + mu * tau);
  const double tau_next = tau * std::sqrt(gamma / gamma_next);
  return {gamma_next, tau_next};
}

bool check_initial_stepsizes(const LipschitzTriple& lip, double delta,
                             double c_alpha, double c_beta, double tau0,
                             double sigma0) {
  lip.validate();
  if (c_alpha <= 0.0)
    throw std::invalid_argument("check_initial_stepsizes: c_alpha must be positive");
  if (tau0 <= 0.0 || sigma0 <= 0.0)
    throw std::invalid_argument("check_initial_stepsizes: step sizes must be positive");

  const double lhs1 = ((1.0 - delta) / tau0 - lip.L_xx) / sigma0;
  const double rhs1 = lip.L_yx * lip.L_yx / c_alpha;
  const bool cond1 = lhs1 >= rhs1 * (1.0 - 1e-12) - 1e-300;

  const double lhs2 = 1.0 - (delta + c_alpha + c_beta);
  double rhs2;
  if (lip.L_yy == 0.0)
    rhs2 = 0.0;  // 0^2/0 = 0 when c_beta = 0; the term vanishes either way
  else if (c_beta > 0.0)
    rhs2 = (lip.L_yy * lip.L_yy / c_beta) * sigma0 * sigma0;
  else
    return false;  // L_yy > 0 needs c_beta > 0
  const bool cond2 = lhs2 >= rhs2 * (1.0 - 1e-12) - 1e-300;

  return cond1 && cond2;
}

double nonmonotone_tau_next(double tau_k, double tau_prev, double gamma_k,
                            double gamma_next, double tau_max) {
  if (tau_k <= 0.0 || tau_prev <= 0.0 || gamma_k <= 0.0 || gamma_next <= 0.0 ||
      tau_max <= 0.0)
    throw std::invalid_argument("nonmonotone_tau_next: bad inputs");
  const double proposal =
      tau_k * std::sqrt((gamma_k / gamma_next) * (1.0 + tau_k / tau_prev));
  return std::min(proposal, tau_max);
}

StepSizeRecipe initial_steps_recipe(const LipschitzTriple& lip, double alpha,
                                    double c_tau, double c_sigma) {
  lip.validate();
  if (alpha <= 0.0)
    throw std::invalid_argument("initial_steps_recipe: alpha must be positive");
  if (c_tau <= 0.0 || c_tau > 1.0 || c_sigma <= 0.0 || c_sigma > 1.0)
    throw std::invalid_argument("initial_steps_recipe: c_tau, c_sigma must be in (0,1]");
  StepSizeRecipe r;
  r.tau0 = c_tau / (lip.L_xx + lip.L_yx * lip.L_yx / alpha);
  r.sigma0 = c_sigma / (alpha + 2.0 * lip.L_yy);
  r.gamma0 = r.sigma0 / r.tau0;
  r.delta = 0.0;
  r.c_alpha = alpha / (alpha + 2.0 * lip.L_yy);
  r.c_beta = lip.L_yy / (alpha + 2.0 * lip.L_yy);
  return r;
}

StepSizeRecipe strongly_convex_recipe(const LipschitzTriple& lip) {
  lip.validate();
  if (lip.L_xx <= 0.0 || lip.L_yy != 0.0)
    throw std::invalid_argument(
        "strongly_convex_recipe: requires L_xx > 0 and L_yy = 0");
  StepSizeRecipe r;
  r.tau0 = 1.0 / (2.0 * lip.L_xx);
  r.sigma0 = lip.L_xx / (lip.L_yx * lip.L_yx);
  r.gamma0 = r.sigma0 / r.tau0;
  r.delta = 0.0;
  r.c_alpha = 1.0;
  r.c_beta = 0.0;
  return r;
}

}  // namespace apd
