// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>

#include "apd/types.hpp"

namespace apd {

/// Componentwise clamp onto [lo, hi]^n. hi may be +inf.
Vec project_box(const Vec& v, double lo, double hi);

/// Euclidean projection onto the unit simplex {y >= 0, sum y = 1},
/// by sort-and-threshold. Exact in finitely many operations.
Vec project_simplex(const Vec& v);

/// argmin_y h(y) - <s,y> + (1/sigma) D_entropy(y, ybar) with h the simplex
/// indicator. Closed form: normalize ybar_i * exp(sigma * s_i); computed in
/// the log domain with max-subtraction so it never overflows. Output is a
/// strictly positive simplex point.
Vec entropy_prox_simplex(const Vec& ybar, const Vec& s, double sigma);

/// Euclidean projection onto {0 <= x <= C} ∩ {<b, x> = 0} with b in {-1,+1}^n.
/// Solved by bisection on the hyperplane multiplier nu of the monotone
/// piecewise-linear g(nu) = <b, clamp(v - nu*b, 0, C)>. C may be +inf.
/// The returned point satisfies |<b, x>| <= 1e-10.
Vec project_box_hyperplane(const Vec& v, double C, const Vec& b);

/// Projection onto the nonnegative orthant, optionally intersected with the
/// centered l2 ball of radius B (clamp then radial scale; exact for this
/// pair of sets).
Vec project_orthant_ball(const Vec& v, std::optional<double> B = std::nullopt);

}  // namespace apd
