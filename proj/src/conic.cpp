// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/conic.hpp"

#include <cmath>
#include <stdexcept>

#include "apd/prox.hpp"

namespace apd {

ConeSpec ConeSpec::orthant() {
  ConeSpec c;
  c.kind = ConeKind::nonneg_orthant;
  c.project_dual = [](const Vec& v) { return Vec(v.cwiseMax(0.0)); };
  c.project_minus = [](const Vec& v) { return Vec(v.cwiseMin(0.0)); };
  return c;
}

SaddleOracle build_saddle_from_conic(const ConicProblem& p,
                                     std::optional<double> dual_bound,
                                     std::optional<double> kappa) {
  if (!p.prox_f || !p.f_value || !p.g_value || !p.g_grad || !p.G_value ||
      !p.G_jacobian_T_apply || !p.cone.project_dual || !p.cone.project_minus)
    throw std::invalid_argument("build_saddle_from_conic: missing callable");
  std::optional<double> cap;
  if (dual_bound) {
    if (*dual_bound <= 0.0)
      throw std::invalid_argument("build_saddle_from_conic: dual bound must be positive");
    cap = *dual_bound + kappa.value_or(*dual_bound);
  }

  SaddleOracle o;
  o.mu = p.mu;
  o.geom_x.kind = GeometryKind::euclidean;
  o.geom_y.kind = GeometryKind::euclidean;
  o.phi = [g = p.g_value, G = p.G_value](const Vec& x, const Vec& y) {
    return g(x) + G(x).dot(y);
  };
  o.grad_x = [gg = p.g_grad, J = p.G_jacobian_T_apply](const Vec& x, const Vec& y) {
    return Vec(gg(x) + J(x, y));
  };
  o.grad_y = [G = p.G_value](const Vec& x, const Vec&) { return G(x); };
  o.prox_f = p.prox_f;
  o.f_value = p.f_value;

  const ConeSpec cone = p.cone;
  if (cone.kind == ConeKind::nonneg_orthant) {
    o.prox_h = [cap](const Vec& yb, const Vec& s, double sigma) {
      return project_orthant_ball(yb + sigma * s, cap);
    };
  } else {
    // project-then-cap; exact for the orthant pair, best-effort otherwise
    o.prox_h = [cone, cap](const Vec& yb, const Vec& s, double sigma) {
      Vec y = cone.project_dual(yb + sigma * s);
      if (cap) {
        const double n2 = y.norm();
        if (n2 > *cap) y *= *cap / n2;
      }
      return y;
    };
  }
  o.h_value = [cone, cap](const Vec& y) {
    const double scale = 1.0 + y.cwiseAbs().maxCoeff();
    if ((y - cone.project_dual(y)).norm() > kFeasTol * scale) return kInf;
    if (cap && y.norm() > *cap * (1.0 + kFeasTol)) return kInf;
    return 0.0;
  };

  if (p.C_G && *p.C_G > 0.0) {
    LipschitzTriple lip;
    lip.L_yx = *p.C_G;
    lip.L_yy = 0.0;
    if (cap && p.L_G) {
      lip.L_xx = p.L_g + *cap * *p.L_G;
      o.lipschitz = lip;
    }
    // without a dual bound grad_x Phi has no uniform curvature constant:
    // leave the triple unset and let the backtracking solvers handle it
  }
  return o;
}

double distance_to_minus_cone(const Vec& w, const ConeSpec& cone) {
  if (cone.kind == ConeKind::nonneg_orthant) return cone.project_dual(w).norm();
  return (w - cone.project_minus(w)).norm();
}

double r_tilde(const ConicProblem& p, const Vec& x_slater) {
  if (p.cone.kind != ConeKind::nonneg_orthant)
    throw std::invalid_argument(
        "r_tilde: closed form only available for the nonnegative orthant");
  const Vec Gx = p.G_value(x_slater);
  if (Gx.maxCoeff() > -1e-8)
    throw std::invalid_argument(
        "r_tilde: point is not strictly feasible (needs G(x) < 0 with margin 1e-8)");
  return -Gx.maxCoeff();
}

double dual_bound_slater(const ConicProblem& p, const Vec& x_slater,
                         double q_lower) {
  const double r = r_tilde(p, x_slater);
  const double rho_bar = p.rho(x_slater);
  if (!std::isfinite(rho_bar))
    throw std::invalid_argument("dual_bound_slater: Slater point outside dom f");
  if (rho_bar < q_lower)
    throw std::invalid_argument(
        "dual_bound_slater: rho(x_slater) < q_lower contradicts weak duality");
  const double B = (rho_bar - q_lower) / r;
  if (B <= 0.0)
    throw std::invalid_argument(
        "dual_bound_slater: degenerate bound (rho(x_slater) == q_lower)");
  return B;
}

double box_lower_bound(const ConicProblem& p, const Vec& xhat, double lo,
                       double hi) {
  const Vec g = p.g_grad(xhat);
  double drop = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    drop += std::min(g[i] * (lo - xhat[i]), g[i] * (hi - xhat[i]));
  return p.rho(xhat) + drop;
}

OptimMetrics optim_metrics(const ConicProblem& p, const Vec& x,
                           std::optional<double> rho_ref) {
  OptimMetrics m;
  const Vec Gx = p.G_value(x);
  m.infeas = distance_to_minus_cone(Gx, p.cone);
  m.mean_violation = Gx.cwiseMax(0.0).sum() / static_cast<double>(Gx.size());
  m.mean_signed_over_n = Gx.sum() / static_cast<double>(p.dim_x);
  if (rho_ref) {
    m.subopt = std::abs(p.rho(x) - *rho_ref) / std::max(1.0, std::abs(*rho_ref));
  }
  return m;
}

Vec y_dagger(const ConicProblem& p, const Vec& x, double bound) {
  if (bound <= 0.0) throw std::invalid_argument("y_dagger: bound must be positive");
  const Vec w = p.cone.project_dual(p.G_value(x));
  const double n2 = w.norm();
  if (n2 == 0.0) return Vec::Zero(w.size());
  return Vec(bound / n2 * w);
}

}  // namespace apd
