// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "apd/bregman.hpp"
#include "apd/types.hpp"

namespace apd {

/// Smoothness structure of the coupling function:
///   ||grad_x Phi(x,y) - grad_x Phi(xb,y)||  <= L_xx ||x - xb||
///   ||grad_y Phi(x,y) - grad_y Phi(xb,yb)|| <= L_yy ||y - yb|| + L_yx ||x - xb||
struct LipschitzTriple {
  double L_xx = 0.0;
  double L_yx = 0.0;  // must be > 0
  double L_yy = 0.0;

  void validate() const;
};

/// Callable description of one saddle problem
///   min_x max_y  f(x) + Phi(x,y) - h(y).
///
/// prox_f(xbar, g, tau) returns argmin_x f(x) + <g,x> + (1/tau) D_X(x, xbar);
/// prox_h(ybar, s, sigma) returns argmin_y h(y) - <s,y> + (1/sigma) D_Y(y, ybar).
/// f_value / h_value return +inf outside their domains (used by gap()).
///
/// Instances are immutable value objects: all members are set at build time
/// and the callables are pure, so oracles are safe to share across
/// concurrently running solves.
struct SaddleOracle {
  double mu = 0.0;  // strong-convexity modulus driving the accelerated schedule

  std::function<double(const Vec&, const Vec&)> phi;
  std::function<Vec(const Vec&, const Vec&)> grad_x;
  std::function<Vec(const Vec&, const Vec&)> grad_y;
  std::function<Vec(const Vec&, const Vec&, double)> prox_f;
  std::function<Vec(const Vec&, const Vec&, double)> prox_h;

  std::function<double(const Vec&)> f_value;
  std::function<double(const Vec&)> h_value;

  BregmanGeometry geom_x;
  BregmanGeometry geom_y;

  std::optional<LipschitzTriple> lipschitz;

  void validate() const;

  /// L(x, y) = f(x) + Phi(x,y) - h(y); +inf / -inf when a domain is violated.
  double lagrangian(const Vec& x, const Vec& y) const;
};

/// Same oracle, every call bumping the shared counters.
SaddleOracle with_counting(const SaddleOracle& o,
                           std::shared_ptr<EvalCounters> counters);

}  // namespace apd
