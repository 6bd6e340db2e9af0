// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <optional>

#include "apd/oracle.hpp"

namespace apd {

enum class ConeKind { nonneg_orthant, custom };

/// A closed convex cone K given through its two projections. The pair must
/// satisfy the Moreau decomposition v = project_minus(v) + project_dual(v)
/// with orthogonal parts (spot-checked by the verification suites).
struct ConeSpec {
  ConeKind kind = ConeKind::nonneg_orthant;
  std::function<Vec(const Vec&)> project_dual;   // onto K*
  std::function<Vec(const Vec&)> project_minus;  // onto -K

  static ConeSpec orthant();
};

/// Constrained program min rho(x) = f(x) + g(x) s.t. G(x) in -K, described
/// through callables. The Jacobian of G is available only as the transpose
/// apply y -> (grad G(x))^T y; it is never materialized.
struct ConicProblem {
  std::function<Vec(const Vec&, const Vec&, double)> prox_f;
  std::function<double(const Vec&)> f_value;
  std::function<double(const Vec&)> g_value;
  std::function<Vec(const Vec&)> g_grad;
  std::function<Vec(const Vec&)> G_value;
  std::function<Vec(const Vec&, const Vec&)> G_jacobian_T_apply;
  ConeSpec cone;
  double L_g = 0.0;
  std::optional<double> C_G;  // Lipschitz constant of G
  std::optional<double> L_G;  // Lipschitz constant of grad G
  double mu = 0.0;
  int dim_x = 0;
  int dim_m = 0;

  double rho(const Vec& x) const { return f_value(x) + g_value(x); }
};

/// Lagrangian saddle form: Phi(x,y) = g(x) + <G(x), y>, h = indicator of K*
/// (intersected with the ball of radius dual_bound + kappa when a bound is
/// supplied; kappa defaults to the bound itself). L_yy = 0 always; L_xx
/// exists only in the bounded case (L_g + (B+kappa) L_G), so the unbounded
/// form forces a backtracking solver.
SaddleOracle build_saddle_from_conic(const ConicProblem& p,
                                     std::optional<double> dual_bound = std::nullopt,
                                     std::optional<double> kappa = std::nullopt);

/// Distance from w to -K (the infeasibility measure): ||project_dual(w)||
/// by the Moreau decomposition.
double distance_to_minus_cone(const Vec& w, const ConeSpec& cone);

/// min_j(-G_j(x_slater)) for the orthant: the exact minimum of -<G(x̄), w>
/// over the l1-normalized dual cone (a linear objective over the simplex
/// attains at a vertex). Requires strict feasibility, margin 1e-8.
double r_tilde(const ConicProblem& p, const Vec& x_slater);

/// Slater-based radius containing every dual optimal solution:
/// B = (rho(x_slater) - q_lower) / r_tilde, with q_lower a valid lower bound
/// on the dual value at some dual-feasible point (typically q(0) = min rho).
double dual_bound_slater(const ConicProblem& p, const Vec& x_slater,
                         double q_lower);

/// Certified lower bound on min_{x in dom f} rho(x) from a feasible point:
/// rho(xhat) + min_{x in box}< grad rho(xhat), x - xhat >, for box domains
/// [lo, hi]^n. Used to source q_lower for dual_bound_slater.
double box_lower_bound(const ConicProblem& p, const Vec& xhat, double lo,
                       double hi);

struct OptimMetrics {
  std::optional<double> subopt;  // |rho(x) - rho_ref| / max(1, |rho_ref|)
  double infeas = 0.0;           // d_{-K}(G(x))
  double mean_violation = 0.0;   // (1/m) sum_j max(G_j(x), 0)  (orthant)
  double mean_signed_over_n = 0.0;  // (1/n) sum_j G_j(x), reported as printed
};

OptimMetrics optim_metrics(const ConicProblem& p, const Vec& x,
                           std::optional<double> rho_ref = std::nullopt);

/// Scaled dual-cone direction of the constraint residual:
/// bound * P_{K*}(G(x)) / ||P_{K*}(G(x))||; zero when x is feasible.
/// Satisfies <G(x), y_dagger> = bound * d_{-K}(G(x)).
Vec y_dagger(const ConicProblem& p, const Vec& x, double bound);

}  // namespace apd
