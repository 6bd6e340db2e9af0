// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/main_step.hpp"

#include <stdexcept>

namespace apd {

MainStepResult main_step_cached(const SaddleOracle& o, const Vec& xbar,
                                const Vec& ybar, const Vec& grad_y_prev,
                                double tau, double sigma, double theta) {
  if (tau <= 0.0 || sigma <= 0.0 || theta <= 0.0)
    throw std::invalid_argument("main_step: tau, sigma, theta must be positive");
  MainStepResult r;
  r.grad_y_at_bar = o.grad_y(xbar, ybar);
  const Vec s = (1.0 + theta) * r.grad_y_at_bar - theta * grad_y_prev;
  r.y_hat = o.prox_h(ybar, s, sigma);
  r.grad_x_at_bar_yhat = o.grad_x(xbar, r.y_hat);
  r.x_hat = o.prox_f(xbar, r.grad_x_at_bar_yhat, tau);
  return r;
}

MainStepResult main_step(const SaddleOracle& o, const Vec& xbar, const Vec& ybar,
                         const Vec& x_p, const Vec& y_p, double tau,
                         double sigma, double theta) {
  return main_step_cached(o, xbar, ybar, o.grad_y(x_p, y_p), tau, sigma, theta);
}

}  // namespace apd
