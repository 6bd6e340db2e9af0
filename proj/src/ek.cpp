// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/ek.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace apd {

namespace {

// 0^2/0 = 0 convention shared by both dual-difference terms.
double ratio_term(double sq_norm, double denom, const char* what) {
  if (denom > 0.0) return sq_norm / (2.0 * denom);
  if (sq_norm <= 1e-20 * (1.0 + sq_norm)) return 0.0;
  throw std::runtime_error(
      std::string("test function: nonzero ") + what +
      " over a zero coefficient; c_beta = 0 is only admissible when the "
      "corresponding gradient difference vanishes");
}

struct TailResult {
  double value = 0.0;
  double noise = 0.0;
};

// Error estimate (per unit machine epsilon) of a squared-difference term
// ||d||^2 / (2q) whose operands have magnitude S: the difference itself is
// only accurate to eps*S, so the term's floor is (2||d||S + eps*S^2)/(2q).
double squared_term_noise(double sq_norm, double scale, double q) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return (2.0 * std::sqrt(sq_norm) * scale + eps * scale * scale) / (2.0 * q);
}

TailResult ek_common_tail(const SaddleOracle& o, const EkContext& ctx,
                          const Vec& x, const Vec& y, double alpha_next,
                          double beta_next) {
  const Vec gy_xy = o.grad_y(x, y);
  const Vec gy_ky = o.grad_y(ctx.x_k, y);
  const double a_num = (gy_xy - gy_ky).squaredNorm();
  const double b_num = (gy_ky - ctx.grad_y_at_k).squaredNorm();
  const double a_term = ratio_term(a_num, alpha_next, "alpha numerator");
  const double b_term = ratio_term(b_num, beta_next, "beta numerator");
  const double dy_coeff =
      1.0 / ctx.sigma_k - ctx.theta_k * (ctx.alpha_k + ctx.beta_k);
  const double dy = o.geom_y.distance(y, ctx.y_k);

  TailResult r;
  r.value = a_term + b_term - dy_coeff * dy;
  const double gy_scale = gy_xy.norm() + gy_ky.norm() + ctx.grad_y_at_k.norm();
  if (alpha_next > 0.0) r.noise += squared_term_noise(a_num, gy_scale, alpha_next);
  if (beta_next > 0.0) r.noise += squared_term_noise(b_num, gy_scale, beta_next);
  r.noise += std::abs(dy_coeff) * dy;
  return r;
}

}  // namespace

double test_function_ek(const SaddleOracle& o, const EkContext& ctx, const Vec& x,
                        const Vec& y, double alpha_next, double beta_next,
                        const Vec* grad_x_ky, double* noise_out) {
  const Vec gx = grad_x_ky ? *grad_x_ky : o.grad_x(ctx.x_k, y);
  const double phi_xy = o.phi(x, y);
  const double phi_ky = o.phi(ctx.x_k, y);
  const double lin = gx.dot(x - ctx.x_k);
  const double dx = o.geom_x.distance(x, ctx.x_k);
  const TailResult tail = ek_common_tail(o, ctx, x, y, alpha_next, beta_next);
  if (noise_out) {
    // the three-term linearization line cancels catastrophically: its error
    // floor sits at eps times the raw magnitudes, not the difference
    *noise_out = std::abs(phi_xy) + std::abs(phi_ky) +
                 gx.norm() * (x - ctx.x_k).norm() + dx / ctx.tau_k + tail.noise;
  }
  return phi_xy - phi_ky - lin - dx / ctx.tau_k + tail.value;
}

double test_function_ek_tilde(const SaddleOracle& o, const EkContext& ctx,
                              const Vec& x, const Vec& y, double alpha_next,
                              double beta_next, const Vec* grad_x_ky,
                              double* noise_out) {
  const Vec gx_k = grad_x_ky ? *grad_x_ky : o.grad_x(ctx.x_k, y);
  const Vec gx_x = o.grad_x(x, y);
  const Vec dxv = x - ctx.x_k;
  const double secant = (gx_x - gx_k).dot(dxv);
  const double dx = o.geom_x.distance(x, ctx.x_k);
  const TailResult tail = ek_common_tail(o, ctx, x, y, alpha_next, beta_next);
  if (noise_out) {
    *noise_out = (gx_x.norm() + gx_k.norm()) * dxv.norm() + dx / ctx.tau_k +
                 tail.noise;
  }
  return secant - dx / ctx.tau_k + tail.value;
}

double test_function_ek_switched(const SaddleOracle& o, const EkContext& ctx,
                                 const Vec& x, const Vec& y, double alpha_next,
                                 double beta_next, const Vec& grad_x_kk,
                                 const Vec* grad_x_xyk, double* noise_out) {
  const Vec gx_xy = o.grad_x(x, y);
  const Vec gx_xyk = grad_x_xyk ? *grad_x_xyk : o.grad_x(x, ctx.y_k);
  const double a_num = (gx_xy - gx_xyk).squaredNorm();
  const double b_num = (gx_xyk - grad_x_kk).squaredNorm();
  const double a_term = ratio_term(a_num, alpha_next, "alpha numerator");
  const double b_term = ratio_term(b_num, beta_next, "beta numerator");
  const double dx_coeff =
      1.0 / ctx.tau_k - ctx.theta_k * (ctx.alpha_k + ctx.beta_k);
  const double dx = o.geom_x.distance(x, ctx.x_k);
  const double dy = o.geom_y.distance(y, ctx.y_k);
  if (noise_out) {
    const double gx_scale = gx_xy.norm() + gx_xyk.norm() + grad_x_kk.norm();
    double noise = dy / ctx.sigma_k + std::abs(dx_coeff) * dx;
    if (alpha_next > 0.0) noise += squared_term_noise(a_num, gx_scale, alpha_next);
    if (beta_next > 0.0) noise += squared_term_noise(b_num, gx_scale, beta_next);
    *noise_out = noise;
  }
  return a_term + b_term - dy / ctx.sigma_k - dx_coeff * dx;
}

PsiBounds psi_bounds(const LipschitzTriple& lip, double gamma0, double c_alpha,
                     double c_beta, double delta) {
  lip.validate();
  if (gamma0 <= 0.0 || c_alpha <= 0.0 || c_beta < 0.0 || delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("psi_bounds: bad parameters");
  PsiBounds b{};
  if (lip.L_xx > 0.0) {
    b.zeta = -1.0 + std::sqrt(1.0 + (4.0 * (1.0 - delta) * gamma0 / c_alpha) *
                                        (lip.L_yx * lip.L_yx) /
                                        (lip.L_xx * lip.L_xx));
    b.psi1 = (c_alpha * lip.L_xx) / (2.0 * gamma0 * lip.L_yx * lip.L_yx) * b.zeta;
  } else {
    b.zeta = kInf;
    b.psi1 = std::sqrt((1.0 - delta) * c_alpha / gamma0) / lip.L_yx;
  }
  if (lip.L_yy > 0.0) {
    const double slack = c_beta * (1.0 - (c_alpha + c_beta + delta));
    b.psi2 = slack > 0.0 ? std::sqrt(slack) / (gamma0 * lip.L_yy) : 0.0;
    b.psi = std::min(b.psi1, b.psi2);
  } else {
    b.psi2 = kInf;
    b.psi = b.psi1;
  }
  return b;
}

}  // namespace apd
