// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace apd {

double psd_top_eigenvalue(const Mat& A, double rel_tol, int max_iter) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("psd_top_eigenvalue: matrix must be square");
  const Eigen::Index n = A.rows();
  if (n == 0) return 0.0;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
  v /= v.norm();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = A * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = w.dot(A * w);
    if (std::abs(next - lambda) <= rel_tol * std::max(1e-300, std::abs(next))) {
      return next;
    }
    lambda = next;
    v = w;
  }
  return lambda;
}

double spectral_norm_upper(const Mat& A, double rel_tol) {
  const Mat gram = A.transpose() * A;
  return 1.01 * std::sqrt(std::max(0.0, psd_top_eigenvalue(gram, rel_tol)));
}

double psd_norm_upper(const Mat& A, double rel_tol) {
  return 1.01 * std::max(0.0, psd_top_eigenvalue(A, rel_tol));
}

}  // namespace apd
