// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "apd/oracle.hpp"

namespace apd {

/// Frozen per-iteration arguments of the backtracking test function.
/// alpha_k, beta_k are the previous accepted iteration's values
/// (c_alpha / sigma_{k-1}, c_beta / sigma_{k-1}); they are held fixed while
/// tau_k shrinks inside an inner loop, whereas tau_k, sigma_k, theta_k are
/// the current trial's.
struct EkContext {
  Vec x_k, y_k;
  Vec grad_y_at_k;  // grad_y Phi(x_k, y_k), cached across inner trials
  double alpha_k = 0.0, beta_k = 0.0;
  double tau_k = 0.0, sigma_k = 0.0, theta_k = 0.0;
};

/// The local step-validity test
///   E_k(x,y) = Phi(x,y) - Phi(x_k,y) - <grad_x Phi(x_k,y), x - x_k>
///            - (1/tau_k) D_X(x, x_k)
///            + (1/(2 alpha_next)) ||grad_y Phi(x,y)   - grad_y Phi(x_k,y)||^2
///            + (1/(2 beta_next))  ||grad_y Phi(x_k,y) - grad_y Phi(x_k,y_k)||^2
///            - (1/sigma_k - theta_k (alpha_k + beta_k)) D_Y(y, y_k)
/// with the 0^2/0 = 0 convention for the beta term. A genuinely nonzero
/// numerator over beta_next = 0 throws (c_beta = 0 on a problem whose dual
/// gradient varies in y).
///
/// grad_x_ky, when given, must equal grad_x Phi(x_k, y) (shared with the
/// main step); otherwise it is evaluated here.
///
/// noise_out, when given, receives an estimate of the cancellation scale of
/// the evaluation (the magnitudes of the terms that nearly cancel); the
/// computed value is meaningful only down to machine epsilon times that
/// scale, which is what acceptance tests should use as slack.
double test_function_ek(const SaddleOracle& o, const EkContext& ctx, const Vec& x,
                        const Vec& y, double alpha_next, double beta_next,
                        const Vec* grad_x_ky = nullptr,
                        double* noise_out = nullptr);

/// Upper-bound variant: the Bregman-of-Phi line is replaced by
/// <grad_x Phi(x,y) - grad_x Phi(x_k,y), x - x_k>, which dominates it for
/// Phi convex in x. A stronger but numerically steadier test (its terms are
/// products of differences, so they cancel benignly).
double test_function_ek_tilde(const SaddleOracle& o, const EkContext& ctx,
                              const Vec& x, const Vec& y, double alpha_next,
                              double beta_next, const Vec* grad_x_ky = nullptr,
                              double* noise_out = nullptr);

/// Test function of the switched-update variant (x-update first):
///   E_k(x,y) = (1/(2 alpha_next)) ||grad_x Phi(x,y)   - grad_x Phi(x,y_k)||^2
///            + (1/(2 beta_next))  ||grad_x Phi(x,y_k) - grad_x Phi(x_k,y_k)||^2
///            - (1/sigma_k) D_Y(y, y_k)
///            - (1/tau_k - theta_k (alpha_k + beta_k)) D_X(x, x_k)
/// Here ctx.grad_y_at_k is unused; grad_x_kk caches grad_x Phi(x_k, y_k) and
/// grad_x_xyk caches grad_x Phi(x, y_k) when available.
double test_function_ek_switched(const SaddleOracle& o, const EkContext& ctx,
                                 const Vec& x, const Vec& y, double alpha_next,
                                 double beta_next, const Vec& grad_x_kk,
                                 const Vec* grad_x_xyk = nullptr,
                                 double* noise_out = nullptr);

/// Inner-iteration bound ingredients:
///   zeta = -1 + sqrt(1 + (4(1-delta)gamma0/c_alpha) L_yx^2/L_xx^2)
///   psi1 = (c_alpha L_xx)/(2 gamma0 L_yx^2) * zeta     (continuous L_xx -> 0
///          limit sqrt((1-delta) c_alpha / gamma0)/L_yx, with zeta = +inf)
///   psi2 = sqrt(c_beta (1 - (c_alpha + c_beta + delta)))/(gamma0 L_yy)
///          (+inf when L_yy = 0)
///   psi  = psi1 if L_yy = 0 else min(psi1, psi2)
/// The number of backtracking trials per outer iteration is then at most
/// 1 + log_{1/eta}(tau_bar / psi).
struct PsiBounds {
  double psi1;
  double psi2;
  double zeta;
  double psi;
};

PsiBounds psi_bounds(const LipschitzTriple& lip, double gamma0, double c_alpha,
                     double c_beta, double delta);

}  // namespace apd
