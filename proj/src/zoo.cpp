// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/zoo.hpp"

#include "apd/dataset.hpp"
#include "apd/games.hpp"
#include "apd/linalg.hpp"
#include "apd/prox.hpp"
#include "apd/qcqp.hpp"
#include "apd/svm.hpp"

namespace apd {

namespace {

std::function<Vec(Rng&)> simplex_sampler(int dim) {
  return [dim](Rng& rng) { return rng.simplex_point(dim); };
}

std::function<Vec(Rng&)> simplex_interior_sampler(int dim) {
  return [dim](Rng& rng) {
    Vec v = rng.simplex_point(dim);
    const Vec u = Vec::Constant(dim, 1.0 / dim);
    return Vec(0.9 * v + 0.1 * u);  // keep clear of the boundary
  };
}

std::function<Vec(Rng&)> box_sampler(int dim, double lo, double hi) {
  return [dim, lo, hi](Rng& rng) { return rng.uniform_vector(dim, lo, hi); };
}

std::function<Vec(Rng&)> box_hyperplane_sampler(int dim, double C, Vec b) {
  return [dim, C, b](Rng& rng) {
    const double hi = std::isfinite(C) ? C : 2.0;
    return project_box_hyperplane(rng.uniform_vector(dim, 0.0, hi), C, b);
  };
}

OracleTestKit game_kit(const std::string& name, const Mat& A) {
  OracleTestKit kit;
  kit.name = name;
  kit.oracle = matrix_game(A);
  const int nx = static_cast<int>(A.rows());
  const int ny = static_cast<int>(A.cols());
  kit.prox_spec.sample_anchor_x = simplex_sampler(nx);
  kit.prox_spec.sample_point_x = simplex_sampler(nx);
  kit.prox_spec.sample_anchor_y = simplex_sampler(ny);
  kit.prox_spec.sample_point_y = simplex_sampler(ny);
  kit.sample_x_interior = simplex_interior_sampler(nx);
  kit.sample_y_interior = simplex_interior_sampler(ny);
  return kit;
}

OracleTestKit qcqp_kit(const std::string& name, std::uint64_t seed, bool strong) {
  OracleTestKit kit;
  kit.name = name;
  const QCQPInstance inst = gen_qcqp(8, 3, seed, strong);
  const ConicProblem p = qcqp_to_conic(inst);
  kit.oracle = build_saddle_from_conic(p);
  kit.prox_spec.sample_anchor_x = box_sampler(inst.n, -10.0, 10.0);
  kit.prox_spec.sample_point_x = box_sampler(inst.n, -10.0, 10.0);
  kit.prox_spec.sample_anchor_y = box_sampler(inst.m, 0.0, 3.0);
  kit.prox_spec.sample_point_y = box_sampler(inst.m, 0.0, 3.0);
  kit.sample_x_interior = box_sampler(inst.n, -5.0, 5.0);
  kit.sample_y_interior = box_sampler(inst.m, 0.1, 2.0);
  return kit;
}

OracleTestKit svm_kit(const std::string& name, std::uint64_t seed,
                      SvmVariant variant, GeometryKind dual_geometry) {
  OracleTestKit kit;
  kit.name = name;
  const Dataset data = make_blobs(24, 4.0, seed);
  const auto K = build_kernel_matrices(data, standard_kernel_trio());
  std::vector<int> train_index;
  for (int i = 0; i < 16; ++i) train_index.push_back(i);
  Vec labels(16);
  for (int i = 0; i < 16; ++i) labels[i] = data.labels[i];
  const double C = variant == SvmVariant::l1 ? 1.0 : kInf;
  const double lambda = variant == SvmVariant::l1 ? 0.0 : 1.0;
  const KernelSVMInstance inst =
      make_svm_instance(K, labels, train_index, variant, C, lambda);
  kit.oracle = build_svm_saddle(inst, dual_geometry);
  kit.prox_spec.mu_f = 0.0;
  kit.prox_spec.mu_h = 0.0;
  const Vec b = labels;
  kit.prox_spec.sample_anchor_x = box_hyperplane_sampler(16, C, b);
  kit.prox_spec.sample_point_x = box_hyperplane_sampler(16, C, b);
  if (dual_geometry == GeometryKind::entropy) {
    kit.prox_spec.sample_anchor_y = simplex_interior_sampler(3);
    kit.prox_spec.sample_point_y = simplex_sampler(3);
  } else {
    kit.prox_spec.sample_anchor_y = simplex_sampler(3);
    kit.prox_spec.sample_point_y = simplex_sampler(3);
  }
  kit.sample_x_interior = box_hyperplane_sampler(16, C, b);
  kit.sample_y_interior = simplex_interior_sampler(3);
  return kit;
}

OracleTestKit bilinear_kit(std::uint64_t seed) {
  OracleTestKit kit;
  kit.name = "bilinear-box";
  Rng rng(seed);
  Mat K(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) K(i, j) = rng.gaussian();
  // min_{x in [-1,1]^3} max_{y in [-1,1]^4} 0.5||x||^2 + <Kx, y>
  SaddleOracle o;
  o.mu = 0.0;
  o.phi = [K](const Vec& x, const Vec& y) {
    return 0.5 * x.squaredNorm() + (K * x).dot(y);
  };
  o.grad_x = [K](const Vec& x, const Vec& y) {
    return Vec(x + K.transpose() * y);
  };
  o.grad_y = [K](const Vec& x, const Vec&) { return Vec(K * x); };
  o.prox_f = [](const Vec& xb, const Vec& g, double tau) {
    return project_box(xb - tau * g, -1.0, 1.0);
  };
  o.prox_h = [](const Vec& yb, const Vec& s, double sigma) {
    return project_box(yb + sigma * s, -1.0, 1.0);
  };
  auto box_ind = [](Eigen::Index dim) {
    return [dim](const Vec& v) {
      if (v.size() != dim) return kInf;
      return v.cwiseAbs().maxCoeff() <= 1.0 + kFeasTol ? 0.0 : kInf;
    };
  };
  o.f_value = box_ind(3);
  o.h_value = box_ind(4);
  LipschitzTriple lip;
  lip.L_xx = 1.0;
  lip.L_yy = 0.0;
  lip.L_yx = spectral_norm_upper(K);
  o.lipschitz = lip;
  kit.oracle = o;
  kit.prox_spec.sample_anchor_x = box_sampler(3, -1.0, 1.0);
  kit.prox_spec.sample_point_x = box_sampler(3, -1.0, 1.0);
  kit.prox_spec.sample_anchor_y = box_sampler(4, -1.0, 1.0);
  kit.prox_spec.sample_point_y = box_sampler(4, -1.0, 1.0);
  kit.sample_x_interior = box_sampler(3, -0.9, 0.9);
  kit.sample_y_interior = box_sampler(4, -0.9, 0.9);
  return kit;
}

}  // namespace

std::vector<OracleTestKit> verification_zoo(std::uint64_t seed) {
  std::vector<OracleTestKit> kits;
  kits.push_back(game_kit("rps-game", rps_matrix()));
  Rng rng(seed);
  Mat A(4, 5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = rng.gaussian();
  kits.push_back(game_kit("random-game", A));
  kits.push_back(qcqp_kit("qcqp-merely-convex", seed + 1, false));
  kits.push_back(qcqp_kit("qcqp-strongly-convex", seed + 2, true));
  kits.push_back(svm_kit("svm-l1", seed + 3, SvmVariant::l1, GeometryKind::euclidean));
  kits.push_back(svm_kit("svm-l2", seed + 4, SvmVariant::l2, GeometryKind::euclidean));
  kits.push_back(
      svm_kit("svm-l2-entropy", seed + 5, SvmVariant::l2, GeometryKind::entropy));
  kits.push_back(bilinear_kit(seed + 6));
  return kits;
}

}  // namespace apd
