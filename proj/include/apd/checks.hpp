// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "apd/conic.hpp"
#include "apd/oracle.hpp"
#include "apd/rng.hpp"

namespace apd {

/// Central finite differences of phi against grad_x / grad_y at the given
/// points; returns the worst relative error max(||fd - g|| / max(1, ||g||)).
double finite_diff_check(const SaddleOracle& o,
                         const std::vector<std::pair<Vec, Vec>>& points,
                         double h_fd = 1e-6);

/// Domain samplers and moduli needed to exercise one oracle's prox maps.
struct ProxSuiteSpec {
  std::function<Vec(Rng&)> sample_anchor_x;  // in dom f (interior for entropy)
  std::function<Vec(Rng&)> sample_point_x;   // comparison points in dom f
  std::function<Vec(Rng&)> sample_anchor_y;
  std::function<Vec(Rng&)> sample_point_y;
  double mu_f = 0.0;  // modulus of f itself (0 for indicators)
  double mu_h = 0.0;
};

struct ProxSuiteReport {
  bool pass = true;
  double worst_violation = 0.0;  // positive = broken
  int samples = 0;
};

/// For random (anchor, linear tilt, t, comparison point), checks the prox
/// characterization
///   F(x) + t D(x, anchor) >= F(x+) + t D(x+, anchor) + t D(x, x+)
///                            + (mu/2) ||x - x+||^2
/// with F the prox objective (f plus its tilt), slack 1e-9, for prox_f and
/// prox_h alike. Failures are reported, not thrown.
ProxSuiteReport prox_inequality_suite(const SaddleOracle& o,
                                      const ProxSuiteSpec& spec, int samples,
                                      std::uint64_t seed);

/// Moreau decomposition spot check: w = P_{-K}(w) + P_{K*}(w) with orthogonal
/// parts; returns the worst absolute violation over random w.
double moreau_check(const ConeSpec& cone, int dim, int samples, std::uint64_t seed);

struct GridSaddle {
  Vec x_star, y_star;
  double value = 0.0;
};

/// Brute-force minimax on a dense grid: x* = argmin_x max_y L(x,y) over grid
/// points. Total dimension at most 3 (the oracle's role is to certify small
/// problems, not to scale).
GridSaddle grid_saddle_oracle(const std::function<double(const Vec&, const Vec&)>& L,
                              const Vec& x_lo, const Vec& x_hi, const Vec& y_lo,
                              const Vec& y_hi, int resolution);

/// Least-squares slope of log(metric) vs log(k). Throws on nonpositive
/// metric values or an empty range.
double rate_fit(const std::vector<long>& ks, const std::vector<double>& vals);

/// Convenience: slope over records with k in [k_min, k_max] of a positive
/// metric sequence indexed by iteration (entry i corresponds to k = i + 1).
double rate_fit_range(const std::vector<double>& metric_by_k, long k_min, long k_max);

/// Worst relative violation of the closed-form schedule identities
/// (theta * sqrt(1 + mu*tau) = 1, tau' = theta * tau, sigma' * theta = sigma)
/// over `configs` random (mu, tau0, gamma0) chains of `steps` recursions.
double schedule_identity_worst(std::uint64_t seed, int configs, int steps);

}  // namespace apd
