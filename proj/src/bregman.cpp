// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/bregman.hpp"

#include <cmath>
#include <stdexcept>

namespace apd {

double bregman_euclidean(const Vec& x, const Vec& xbar) {
  if (x.size() != xbar.size())
    throw std::invalid_argument("bregman_euclidean: dimension mismatch");
  return 0.5 * (x - xbar).squaredNorm();
}

double bregman_entropy(const Vec& y, const Vec& ybar) {
  if (y.size() != ybar.size())
    throw std::invalid_argument("bregman_entropy: dimension mismatch");
  if (ybar.minCoeff() <= 0.0)
    throw std::invalid_argument(
        "bregman_entropy: anchor must be strictly positive");
  if (y.minCoeff() < -kFeasTol || std::abs(y.sum() - 1.0) > kFeasTol)
    throw std::invalid_argument(
        "bregman_entropy: point outside the simplex beyond tolerance");
  double d = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] > 0.0) d += y[i] * std::log(y[i] / ybar[i]);
  }
  return d;
}

double BregmanGeometry::distance(const Vec& x, const Vec& xbar) const {
  return kind == GeometryKind::euclidean ? bregman_euclidean(x, xbar)
                                         : bregman_entropy(x, xbar);
}

Vec BregmanGeometry::mirror_gradient(const Vec& x) const {
  if (kind == GeometryKind::euclidean) return x;
  if (x.minCoeff() <= 0.0)
    throw std::invalid_argument(
        "entropy mirror gradient needs strictly positive input");
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = 1.0 + std::log(x[i]);
  return g;
}

}  // namespace apd
