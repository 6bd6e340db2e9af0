// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <vector>

#include "apd/dataset.hpp"
#include "apd/oracle.hpp"

namespace apd {

enum class KernelKind { polynomial_quadratic, gaussian, linear };

/// The standard trio: quadratic polynomial (1 + a.b)^2, Gaussian with
/// bandwidth 0.1, and linear a.b.
std::vector<KernelKind> standard_kernel_trio();

/// Gram matrices of the given kernels over the dataset rows, normalized so
/// every diagonal equals 1 (K_ij / sqrt(K_ii K_jj)). Features must already be
/// normalized. Throws if a diagonal entry is nonpositive before normalization
/// (possible for the linear kernel at a zero row).
std::vector<Mat> build_kernel_matrices(const Dataset& data,
                                       const std::vector<KernelKind>& kernels);

enum class SvmVariant { l1, l2 };

/// Multiple-kernel SVM saddle problem over the training block:
///   min_{x in X} max_{y in simplex}
///     -2 e^T x + sum_l (c/r_l) y_l x^T G_l x + lambda ||x||^2,
/// G_l = diag(b) K_l^tr diag(b), X = {0 <= x <= C, <b,x> = 0} (l1, lambda=0)
/// or {x >= 0, <b,x> = 0} (l2, C = inf).
struct KernelSVMInstance {
  std::vector<Mat> K_tr;  // normalized training blocks
  Vec labels;             // ±1, length n_tr
  SvmVariant variant = SvmVariant::l2;
  double C = kInf;        // l1 only
  double lambda = 0.0;    // l2 only
  double c_trace = 0.0;   // sum of full-kernel traces
  Vec r;                  // full-kernel traces (all equal n after normalization)
};

/// Assemble an instance from normalized full kernels and a train/test split:
/// training blocks, traces of the full kernels, and the model parameters.
KernelSVMInstance make_svm_instance(const std::vector<Mat>& K_full,
                                    const Vec& labels_train,
                                    const std::vector<int>& train_index,
                                    SvmVariant variant, double C, double lambda);

/// SaddleOracle for the instance. The dual simplex prox is Euclidean by
/// default; entropy geometry is selectable. mu = 2*lambda, L_yy = 0, and the
/// curvature constants come from the 1%-inflated kernel norms with primal
/// radius C*sqrt(n_tr) (l1) or 2*sqrt(n_tr)/lambda (l2).
SaddleOracle build_svm_saddle(const KernelSVMInstance& inst,
                              GeometryKind dual_geometry = GeometryKind::euclidean);

struct PredictionResult {
  Vec labels;          // ±1 per test point
  double gamma_star;   // intercept (median over valid support indices)
};

/// Kernel-SVM prediction: eta_l = y_l * c / r_l recovers the kernel weights,
/// K* = sum_l eta_l K_l (full), scores = sum_{j in train} b_j alpha_j K*_{ji}
/// + gamma*. The intercept uses support indices with alpha in (0, C) (l1) or
/// alpha > 0 (l2), tolerance band 1e-6; throws when none exists.
PredictionResult predict_labels(const KernelSVMInstance& inst, const Vec& alpha_star,
                                const Vec& y_star, const std::vector<Mat>& K_full,
                                const std::vector<int>& test_index);

}  // namespace apd
