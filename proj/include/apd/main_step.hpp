// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "apd/oracle.hpp"

namespace apd {

struct MainStepResult {
  Vec x_hat;
  Vec y_hat;
  Vec grad_y_at_bar;     // grad_y Phi(xbar, ybar), for the caller's cache
  Vec grad_x_at_bar_yhat;  // grad_x Phi(xbar, y_hat), reusable by the E_k test
};

/// One primal-dual step. The dual update strictly precedes the primal one:
///   s     = (1+theta) grad_y Phi(xbar,ybar) - theta * grad_y_prev
///   y_hat = prox_h(ybar, s, sigma)
///   x_hat = prox_f(xbar, grad_x Phi(xbar, y_hat), tau)
/// grad_y_prev is the cached grad_y Phi at the previous iterate, so each call
/// costs exactly one fresh grad_y and one grad_x.
MainStepResult main_step_cached(const SaddleOracle& o, const Vec& xbar,
                                const Vec& ybar, const Vec& grad_y_prev,
                                double tau, double sigma, double theta);

/// Convenience form taking the previous iterate itself; evaluates
/// grad_y Phi(x_p, y_p) and delegates.
MainStepResult main_step(const SaddleOracle& o, const Vec& xbar, const Vec& ybar,
                         const Vec& x_p, const Vec& y_p, double tau,
                         double sigma, double theta);

}  // namespace apd
