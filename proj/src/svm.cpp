// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apd/linalg.hpp"
#include "apd/prox.hpp"

namespace apd {

std::vector<KernelKind> standard_kernel_trio() {
  return {KernelKind::polynomial_quadratic, KernelKind::gaussian,
          KernelKind::linear};
}

namespace {

double kernel_eval(KernelKind k, const Vec& a, const Vec& b) {
  switch (k) {
    case KernelKind::polynomial_quadratic: {
      const double d = 1.0 + a.dot(b);
      return d * d;
    }
    case KernelKind::gaussian:
      return std::exp(-0.5 * (a - b).squaredNorm() / 0.1);
    case KernelKind::linear:
      return a.dot(b);
  }
  return 0.0;
}

}  // namespace

std::vector<Mat> build_kernel_matrices(const Dataset& data,
                                       const std::vector<KernelKind>& kernels) {
  const Eigen::Index n = data.features.rows();
  std::vector<Mat> out;
  out.reserve(kernels.size());
  for (KernelKind kind : kernels) {
    Mat K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double v =
            kernel_eval(kind, data.features.row(i), data.features.row(j));
        K(i, j) = v;
        K(j, i) = v;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      if (K(i, i) <= 0.0)
        throw std::runtime_error(
            "build_kernel_matrices: nonpositive diagonal before normalization "
            "(degenerate data row for this kernel)");
    Vec d = K.diagonal().cwiseSqrt();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) K(i, j) /= d[i] * d[j];
    out.push_back(std::move(K));
  }
  return out;
}

KernelSVMInstance make_svm_instance(const std::vector<Mat>& K_full,
                                    const Vec& labels_train,
                                    const std::vector<int>& train_index,
                                    SvmVariant variant, double C, double lambda) {
  if (variant == SvmVariant::l1 && (lambda != 0.0 || !std::isfinite(C) || C <= 0.0))
    throw std::invalid_argument("l1 variant requires finite C > 0 and lambda = 0");
  if (variant == SvmVariant::l2 && (lambda <= 0.0 || std::isfinite(C)))
    throw std::invalid_argument("l2 variant requires lambda > 0 and C = inf");
  KernelSVMInstance inst;
  inst.variant = variant;
  inst.C = C;
  inst.lambda = lambda;
  inst.labels = labels_train;
  const auto n_tr = static_cast<Eigen::Index>(train_index.size());
  if (labels_train.size() != n_tr)
    throw std::invalid_argument("make_svm_instance: labels/train split mismatch");
  inst.r.resize(static_cast<Eigen::Index>(K_full.size()));
  for (std::size_t l = 0; l < K_full.size(); ++l) {
    inst.r[static_cast<Eigen::Index>(l)] = K_full[l].trace();
    Mat blk(n_tr, n_tr);
    for (Eigen::Index i = 0; i < n_tr; ++i)
      for (Eigen::Index j = 0; j < n_tr; ++j)
        blk(i, j) = K_full[l](train_index[i], train_index[j]);
    inst.K_tr.push_back(std::move(blk));
  }
  inst.c_trace = inst.r.sum();
  return inst;
}

SaddleOracle build_svm_saddle(const KernelSVMInstance& inst,
                              GeometryKind dual_geometry) {
  const auto M = static_cast<Eigen::Index>(inst.K_tr.size());
  if (M == 0) throw std::invalid_argument("build_svm_saddle: no kernels");
  const Eigen::Index n_tr = inst.labels.size();
  const double C = inst.variant == SvmVariant::l1 ? inst.C : kInf;
  const double lambda = inst.lambda;
  const Vec b = inst.labels;
  for (Eigen::Index i = 0; i < n_tr; ++i)
    if (b[i] != 1.0 && b[i] != -1.0)
      throw std::invalid_argument("build_svm_saddle: labels must be ±1");

  // G_l = diag(b) K_l diag(b), weighted by w_l = c / r_l
  std::vector<Mat> G(M);
  Vec w(M);
  for (Eigen::Index l = 0; l < M; ++l) {
    w[l] = inst.c_trace / inst.r[l];
    G[l] = b.asDiagonal() * inst.K_tr[l] * b.asDiagonal();
  }

  SaddleOracle o;
  o.mu = 2.0 * lambda;
  o.geom_x.kind = GeometryKind::euclidean;
  o.geom_y.kind = dual_geometry;
  o.phi = [G, w, lambda, M](const Vec& x, const Vec& y) {
    double v = -2.0 * x.sum() + lambda * x.squaredNorm();
    for (Eigen::Index l = 0; l < M; ++l) v += w[l] * y[l] * x.dot(G[l] * x);
    return v;
  };
  o.grad_x = [G, w, lambda, M](const Vec& x, const Vec& y) {
    Vec g = Vec::Constant(x.size(), -2.0) + 2.0 * lambda * x;
    for (Eigen::Index l = 0; l < M; ++l) g += 2.0 * w[l] * y[l] * (G[l] * x);
    return g;
  };
  o.grad_y = [G, w, M](const Vec& x, const Vec&) {
    Vec g(M);
    for (Eigen::Index l = 0; l < M; ++l) g[l] = w[l] * x.dot(G[l] * x);
    return g;
  };
  o.prox_f = [C, b](const Vec& xb, const Vec& g, double tau) {
    return project_box_hyperplane(xb - tau * g, C, b);
  };
  if (dual_geometry == GeometryKind::entropy) {
    o.prox_h = [](const Vec& yb, const Vec& s, double sigma) {
      return entropy_prox_simplex(yb, s, sigma);
    };
  } else {
    o.prox_h = [](const Vec& yb, const Vec& s, double sigma) {
      return project_simplex(yb + sigma * s);
    };
  }
  o.f_value = [C, b, n_tr](const Vec& x) {
    if (x.size() != n_tr) return kInf;
    if (x.minCoeff() < -kFeasTol || x.maxCoeff() > C * (1.0 + kFeasTol) + kFeasTol)
      return kInf;
    const double scale = 1.0 + x.cwiseAbs().sum();
    return std::abs(b.dot(x)) <= kFeasTol * scale ? 0.0 : kInf;
  };
  o.h_value = [M](const Vec& y) {
    if (y.size() != M) return kInf;
    if (y.minCoeff() < -kFeasTol) return kInf;
    return std::abs(y.sum() - 1.0) <= kFeasTol ? 0.0 : kInf;
  };

  double max_wg = 0.0;
  for (Eigen::Index l = 0; l < M; ++l)
    max_wg = std::max(max_wg, w[l] * psd_norm_upper(G[l]));
  const double radius = inst.variant == SvmVariant::l1
                            ? C * std::sqrt(static_cast<double>(n_tr))
                            : 2.0 * std::sqrt(static_cast<double>(n_tr)) / lambda;
  LipschitzTriple lip;
  lip.L_xx = 2.0 * max_wg + 2.0 * lambda;
  lip.L_yy = 0.0;
  lip.L_yx = 2.0 * std::sqrt(static_cast<double>(M)) * max_wg * radius;
  o.lipschitz = lip;
  return o;
}

PredictionResult predict_labels(const KernelSVMInstance& inst, const Vec& alpha_star,
                                const Vec& y_star, const std::vector<Mat>& K_full,
                                const std::vector<int>& test_index) {
  const auto M = static_cast<Eigen::Index>(K_full.size());
  if (y_star.size() != M)
    throw std::invalid_argument("predict_labels: y/kernel count mismatch");
  const auto n_full = static_cast<int>(K_full[0].rows());
  std::vector<bool> is_test(n_full, false);
  for (int i : test_index) is_test[i] = true;
  std::vector<int> train_index;
  for (int i = 0; i < n_full; ++i)
    if (!is_test[i]) train_index.push_back(i);
  const auto n_tr = static_cast<Eigen::Index>(train_index.size());
  if (alpha_star.size() != n_tr || inst.labels.size() != n_tr)
    throw std::invalid_argument("predict_labels: alpha/train split mismatch");

  // K* = sum_l eta_l K_l with eta_l = y_l c / r_l
  Mat K_star = Mat::Zero(n_full, n_full);
  for (Eigen::Index l = 0; l < M; ++l)
    K_star += (y_star[l] * inst.c_trace / inst.r[l]) * K_full[l];

  auto weighted_score = [&](int col) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n_tr; ++j)
      s += inst.labels[j] * alpha_star[j] * K_star(train_index[j], col);
    return s;
  };

  const double band = 1e-6;
  std::vector<double> intercepts;
  for (Eigen::Index j = 0; j < n_tr; ++j) {
    const double a = alpha_star[j];
    bool valid = inst.variant == SvmVariant::l1
                     ? (a > band && a < inst.C - band)
                     : (a > band);
    if (!valid) continue;
    double g = inst.labels[j];
    if (inst.variant == SvmVariant::l2) g *= 1.0 - inst.lambda * a;
    intercepts.push_back(g - weighted_score(train_index[j]));
  }
  if (intercepts.empty())
    throw std::runtime_error(
        "predict_labels: no support vector index with alpha strictly inside its "
        "bounds; adjust C or lambda");
  std::sort(intercepts.begin(), intercepts.end());
  const std::size_t mid = intercepts.size() / 2;
  const double gamma = intercepts.size() % 2 == 1
                           ? intercepts[mid]
                           : 0.5 * (intercepts[mid - 1] + intercepts[mid]);

  PredictionResult res;
  res.gamma_star = gamma;
  res.labels.resize(static_cast<Eigen::Index>(test_index.size()));
  for (std::size_t t = 0; t < test_index.size(); ++t) {
    const double s = weighted_score(test_index[t]) + gamma;
    res.labels[static_cast<Eigen::Index>(t)] = s >= 0.0 ? 1.0 : -1.0;
  }
  return res;
}

}  // namespace apd
