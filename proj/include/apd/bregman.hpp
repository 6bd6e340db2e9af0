// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "apd/types.hpp"

namespace apd {

/// D(x, xbar) = 0.5 * ||x - xbar||_2^2.
double bregman_euclidean(const Vec& x, const Vec& xbar);

/// Negative-entropy Bregman distance on the simplex:
/// sum_i y_i * ln(y_i / ybar_i), with 0*ln(0) = 0.
///
/// Requires ybar strictly positive on the simplex and y inside the simplex
/// up to kFeasTol; both are checked.
double bregman_entropy(const Vec& y, const Vec& ybar);

enum class GeometryKind { euclidean, entropy };

/// A 1-strongly-convex reference geometry for prox maps.
/// euclidean: phi(x) = 0.5||x||^2 (strong convexity w.r.t. l2)
/// entropy:   phi(y) = sum y_i ln y_i on the simplex (w.r.t. l1)
struct BregmanGeometry {
  GeometryKind kind = GeometryKind::euclidean;

  double distance(const Vec& x, const Vec& xbar) const;

  /// Gradient of the generator phi at x. Entropy requires x > 0.
  Vec mirror_gradient(const Vec& x) const;
};

}  // namespace apd
