// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>

namespace apd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Membership checks use this unless a caller passes its own slack.
inline constexpr double kFeasTol = 1e-10;

inline bool is_finite(double v) { return std::isfinite(v); }

inline bool is_finite(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

/// Call counts for one solve. All reported complexity is in terms of these.
struct EvalCounters {
  std::int64_t phi = 0;
  std::int64_t grad_x = 0;
  std::int64_t grad_y = 0;
  std::int64_t prox_f = 0;
  std::int64_t prox_h = 0;

  std::int64_t grad_total() const { return grad_x + grad_y; }
};

}  // namespace apd
