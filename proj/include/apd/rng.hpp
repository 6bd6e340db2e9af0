// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <random>

#include "apd/types.hpp"

namespace apd {

/// Seeded generator with hand-rolled transforms.
///
/// std::normal_distribution and friends are implementation-defined, which
/// would break the bit-for-bit instance reproducibility contract across
/// standard libraries; the transforms here depend only on mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller, one spare cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

  Vec gaussian_vector(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Vec uniform_vector(Eigen::Index n, double lo, double hi) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Uniform point on the unit simplex (normalized exponentials).
  Vec simplex_point(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      v[i] = -std::log(u);
    }
    return v / v.sum();
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace apd
