// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/oracle.hpp"

#include <stdexcept>
#include <utility>

namespace apd {

void LipschitzTriple::validate() const {
  if (!(L_yx > 0.0))
    throw std::invalid_argument("LipschitzTriple: L_yx must be positive");
  if (L_xx < 0.0 || L_yy < 0.0)
    throw std::invalid_argument("LipschitzTriple: L_xx, L_yy must be nonnegative");
}

void SaddleOracle::validate() const {
  if (!phi || !grad_x || !grad_y || !prox_f || !prox_h || !f_value || !h_value)
    throw std::invalid_argument("SaddleOracle: missing callable");
  if (mu < 0.0) throw std::invalid_argument("SaddleOracle: mu must be nonnegative");
  if (mu > 0.0 && geom_x.kind != GeometryKind::euclidean)
    throw std::invalid_argument(
        "SaddleOracle: mu > 0 requires the Euclidean primal geometry");
  if (lipschitz) lipschitz->validate();
}

double SaddleOracle::lagrangian(const Vec& x, const Vec& y) const {
  const double fx = f_value(x);
  const double hy = h_value(y);
  if (fx == kInf) return kInf;
  if (hy == kInf) return -kInf;
  return fx + phi(x, y) - hy;
}

SaddleOracle with_counting(const SaddleOracle& o,
                           std::shared_ptr<EvalCounters> counters) {
  SaddleOracle c = o;
  c.phi = [f = o.phi, counters](const Vec& x, const Vec& y) {
    ++counters->phi;
    return f(x, y);
  };
  c.grad_x = [f = o.grad_x, counters](const Vec& x, const Vec& y) {
    ++counters->grad_x;
    return f(x, y);
  };
  c.grad_y = [f = o.grad_y, counters](const Vec& x, const Vec& y) {
    ++counters->grad_y;
    return f(x, y);
  };
  c.prox_f = [f = o.prox_f, counters](const Vec& xb, const Vec& g, double t) {
    ++counters->prox_f;
    return f(xb, g, t);
  };
  c.prox_h = [f = o.prox_h, counters](const Vec& yb, const Vec& s, double t) {
    ++counters->prox_h;
    return f(yb, s, t);
  };
  return c;
}

}  // namespace apd
