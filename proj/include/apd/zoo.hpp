// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>
#include <vector>

#include "apd/checks.hpp"
#include "apd/conic.hpp"
#include "apd/oracle.hpp"

namespace apd {

/// One zoo problem bundled with the domain samplers its verification suites
/// need (finite differences at interior points, prox inequality at feasible
/// anchors/targets).
struct OracleTestKit {
  std::string name;
  SaddleOracle oracle;
  ProxSuiteSpec prox_spec;
  std::function<Vec(Rng&)> sample_x_interior;
  std::function<Vec(Rng&)> sample_y_interior;
};

/// Every oracle family in the repo, desk-sized: matrix games (RPS and a
/// random payoff), merely and strongly convex QCQP saddles, both SVM
/// variants (Euclidean dual), an entropy-geometry SVM, and a bilinear toy.
std::vector<OracleTestKit> verification_zoo(std::uint64_t seed);

}  // namespace apd
