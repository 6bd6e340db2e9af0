// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <vector>

#include "apd/conic.hpp"
#include "apd/types.hpp"

namespace apd {

/// Box-constrained QCQP
///   min 1/2 x^T A_0 x + b_0^T x   over [-box_radius, box_radius]^n
///   s.t. 1/2 x^T A_j x + b_j^T x - c_j <= 0,  j = 1..m.
/// A holds m+1 symmetric PSD matrices (index 0 = objective); c has m entries.
struct QCQPInstance {
  std::vector<Mat> A;
  std::vector<Vec> b;
  Vec c;
  double box_radius = 10.0;
  bool strongly_convex = false;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;

  double mu() const { return strongly_convex ? 1.0 : 0.0; }
};

/// Random instance: A_j = Lambda_j^T S_j Lambda_j with Lambda_j a random
/// orthonormal matrix (QR of a Gaussian matrix) and S_j diagonal sampled
/// uniformly from [0,100] with its minimum entry forced to exactly 0; the
/// strongly convex objective draws S_0 from [1,101] instead. b_j Gaussian,
/// c_j uniform on [0,1]. Deterministic given the seed.
QCQPInstance gen_qcqp(int n, int m, std::uint64_t seed, bool strongly_convex);

/// Lagrangian-ready description: f = box indicator, g the quadratic
/// objective, G the constraint stack, all Lipschitz constants upper-bounded
/// via power iteration (+1% inflation) over the box.
ConicProblem qcqp_to_conic(const QCQPInstance& inst);

}  // namespace apd
