// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include "apd/oracle.hpp"

namespace apd {

/// Bilinear matrix game min_{x in simplex} max_{y in simplex} x^T A y.
/// L_xx = L_yy = 0, L_yx = ||A|| (spectral, 1%-inflated); Euclidean simplex
/// projections on both sides.
SaddleOracle matrix_game(const Mat& A);

/// Rock-paper-scissors payoff [[0,-1,1],[1,0,-1],[-1,1,0]]: skew-symmetric,
/// value 0, unique uniform equilibrium.
Mat rps_matrix();

/// Best-response (sup) primal-dual gap of a matrix game at (x, y):
/// max_i (A^T x)_i - min_j (A y)_j. Zero exactly at an equilibrium.
double matrix_game_sup_gap(const Mat& A, const Vec& x, const Vec& y);

}  // namespace apd
