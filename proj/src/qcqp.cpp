// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/qcqp.hpp"

#include <cmath>
#include <stdexcept>

#include "apd/linalg.hpp"
#include "apd/prox.hpp"
#include "apd/rng.hpp"

namespace apd {

QCQPInstance gen_qcqp(int n, int m, std::uint64_t seed, bool strongly_convex) {
  if (n < 2 || m < 1) throw std::invalid_argument("gen_qcqp: need n >= 2, m >= 1");
  QCQPInstance inst;
  inst.n = n;
  inst.m = m;
  inst.seed = seed;
  inst.strongly_convex = strongly_convex;
  Rng rng(seed);

  inst.A.reserve(m + 1);
  inst.b.reserve(m + 1);
  for (int j = 0; j <= m; ++j) {
    Mat raw(n, n);
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) raw(r, cc) = rng.gaussian();
    const Mat Q = Eigen::HouseholderQR<Mat>(raw).householderQ();

    Vec diag(n);
    if (j == 0 && strongly_convex) {
      for (int i = 0; i < n; ++i) diag[i] = rng.uniform(1.0, 101.0);
    } else {
      for (int i = 0; i < n; ++i) diag[i] = rng.uniform(0.0, 100.0);
      Eigen::Index argmin = 0;
      diag.minCoeff(&argmin);
      diag[argmin] = 0.0;  // 0 included as the minimum element
    }
    Mat A = Q.transpose() * diag.asDiagonal() * Q;
    A = 0.5 * (A + A.transpose());
    inst.A.push_back(std::move(A));
    inst.b.push_back(rng.gaussian_vector(n));
  }
  inst.c = Vec(m);
  for (int j = 0; j < m; ++j) inst.c[j] = rng.uniform(0.0, 1.0);
  return inst;
}

ConicProblem qcqp_to_conic(const QCQPInstance& inst) {
  const int n = inst.n, m = inst.m;
  const double R = inst.box_radius;
  ConicProblem p;
  p.dim_x = n;
  p.dim_m = m;
  p.mu = inst.mu();
  p.cone = ConeSpec::orthant();

  const auto A = inst.A;  // shared by the closures
  const auto b = inst.b;
  const Vec c = inst.c;

  p.prox_f = [R](const Vec& xb, const Vec& g, double tau) {
    return project_box(xb - tau * g, -R, R);
  };
  p.f_value = [R, n](const Vec& x) {
    if (x.size() != n) return kInf;
    return x.cwiseAbs().maxCoeff() <= R * (1.0 + kFeasTol) + kFeasTol ? 0.0 : kInf;
  };
  p.g_value = [A, b](const Vec& x) {
    return 0.5 * x.dot(A[0] * x) + b[0].dot(x);
  };
  p.g_grad = [A, b](const Vec& x) { return Vec(A[0] * x + b[0]); };
  p.G_value = [A, b, c, m](const Vec& x) {
    Vec G(m);
    for (int j = 0; j < m; ++j)
      G[j] = 0.5 * x.dot(A[j + 1] * x) + b[j + 1].dot(x) - c[j];
    return G;
  };
  p.G_jacobian_T_apply = [A, b, m, n](const Vec& x, const Vec& y) {
    Vec out = Vec::Zero(n);
    for (int j = 0; j < m; ++j) out += y[j] * (A[j + 1] * x + b[j + 1]);
    return out;
  };

  p.L_g = psd_norm_upper(A[0]);
  const double box_norm = R * std::sqrt(static_cast<double>(n));
  double cg_sq = 0.0, lg_sq = 0.0;
  for (int j = 1; j <= m; ++j) {
    const double nj = psd_norm_upper(A[j]);
    const double row = nj * box_norm + b[j].norm();
    cg_sq += row * row;
    lg_sq += nj * nj;
  }
  p.C_G = std::sqrt(cg_sq);
  p.L_G = std::sqrt(lg_sq);
  return p;
}

}  // namespace apd
