// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "apd/types.hpp"

namespace apd {

/// Largest eigenvalue of a symmetric PSD matrix by power iteration,
/// deterministic start, relative tolerance rel_tol.
double psd_top_eigenvalue(const Mat& A, double rel_tol = 1e-6,
                          int max_iter = 100000);

/// Spectral norm of a general matrix (power iteration on A^T A), inflated by
/// 1% so it can serve as a Lipschitz upper bound.
double spectral_norm_upper(const Mat& A, double rel_tol = 1e-6);

/// PSD top eigenvalue inflated by 1% (Lipschitz upper bound for quadratics).
double psd_norm_upper(const Mat& A, double rel_tol = 1e-6);

}  // namespace apd
