// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace apd {

Vec project_box(const Vec& v, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("project_box: lo > hi");
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = std::min(std::max(v[i], lo), hi);
  return out;
}

Vec project_simplex(const Vec& v) {
  const Eigen::Index n = v.size();
  if (n < 1) throw std::invalid_argument("project_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Vec entropy_prox_simplex(const Vec& ybar, const Vec& s, double sigma) {
  if (ybar.size() != s.size())
    throw std::invalid_argument("entropy_prox_simplex: dimension mismatch");
  if (sigma <= 0.0)
    throw std::invalid_argument("entropy_prox_simplex: sigma must be positive");
  if (ybar.minCoeff() <= 0.0 || std::abs(ybar.sum() - 1.0) > kFeasTol)
    throw std::invalid_argument(
        "entropy_prox_simplex: anchor must be a strictly positive simplex point");
  Vec logits(ybar.size());
  for (Eigen::Index i = 0; i < ybar.size(); ++i)
    logits[i] = std::log(ybar[i]) + sigma * s[i];
  const double m = logits.maxCoeff();
  Vec w(ybar.size());
  for (Eigen::Index i = 0; i < ybar.size(); ++i) w[i] = std::exp(logits[i] - m);
  return w / w.sum();
}

namespace {

// <b, clamp(v - nu*b, 0, C)>, nonincreasing in nu.
double hyperplane_residual(const Vec& v, double C, const Vec& b, double nu) {
  double g = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double xi = std::min(std::max(v[i] - nu * b[i], 0.0), C);
    g += b[i] * xi;
  }
  return g;
}

}  // namespace

Vec project_box_hyperplane(const Vec& v, double C, const Vec& b) {
  if (v.size() != b.size())
    throw std::invalid_argument("project_box_hyperplane: dimension mismatch");
  if (C <= 0.0)
    throw std::invalid_argument("project_box_hyperplane: C must be positive");
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (b[i] != 1.0 && b[i] != -1.0)
      throw std::invalid_argument(
          "project_box_hyperplane: b entries must be +1 or -1");

  const double vmax = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  const double span = (std::isfinite(C) ? C : 0.0) + vmax + 1.0;
  double lo = -span, hi = span;
  double glo = hyperplane_residual(v, C, b, lo);
  double ghi = hyperplane_residual(v, C, b, hi);
  if (glo < 0.0 || ghi > 0.0)
    throw std::runtime_error(
        "project_box_hyperplane: root search failed to bracket (inconsistent inputs)");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * span; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = hyperplane_residual(v, C, b, mid);
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double nu = 0.5 * (lo + hi);
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = std::min(std::max(v[i] - nu * b[i], 0.0), C);
  return out;
}

Vec project_orthant_ball(const Vec& v, std::optional<double> B) {
  Vec out = v.cwiseMax(0.0);
  if (B) {
    if (*B <= 0.0)
      throw std::invalid_argument("project_orthant_ball: radius must be positive");
    const double n2 = out.norm();
    if (n2 > *B) out *= *B / n2;
  }
  return out;
}

}  // namespace apd
