// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/games.hpp"

#include <stdexcept>

#include "apd/linalg.hpp"
#include "apd/prox.hpp"

namespace apd {

SaddleOracle matrix_game(const Mat& A) {
  if (!A.allFinite()) throw std::invalid_argument("matrix_game: A must be finite");
  const Eigen::Index nx = A.rows();
  const Eigen::Index ny = A.cols();
  SaddleOracle o;
  o.mu = 0.0;
  o.geom_x.kind = GeometryKind::euclidean;
  o.geom_y.kind = GeometryKind::euclidean;
  o.phi = [A](const Vec& x, const Vec& y) { return x.dot(A * y); };
  o.grad_x = [A](const Vec&, const Vec& y) { return Vec(A * y); };
  o.grad_y = [A](const Vec& x, const Vec&) { return Vec(A.transpose() * x); };
  o.prox_f = [](const Vec& xb, const Vec& g, double tau) {
    return project_simplex(xb - tau * g);
  };
  o.prox_h = [](const Vec& yb, const Vec& s, double sigma) {
    return project_simplex(yb + sigma * s);
  };
  auto simplex_indicator = [](Eigen::Index dim) {
    return [dim](const Vec& v) {
      if (v.size() != dim) return kInf;
      if (v.minCoeff() < -kFeasTol) return kInf;
      return std::abs(v.sum() - 1.0) <= kFeasTol ? 0.0 : kInf;
    };
  };
  o.f_value = simplex_indicator(nx);
  o.h_value = simplex_indicator(ny);

  LipschitzTriple lip;
  lip.L_xx = 0.0;
  lip.L_yy = 0.0;
  lip.L_yx = spectral_norm_upper(A);
  o.lipschitz = lip;
  return o;
}

Mat rps_matrix() {
  Mat A(3, 3);
  A << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  return A;
}

double matrix_game_sup_gap(const Mat& A, const Vec& x, const Vec& y) {
  return (A.transpose() * x).maxCoeff() - (A * y).minCoeff();
}

}  // namespace apd
