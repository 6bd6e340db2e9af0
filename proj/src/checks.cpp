// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/checks.hpp"

#include <cmath>
#include <stdexcept>

#include "apd/schedule.hpp"

namespace apd {

double finite_diff_check(const SaddleOracle& o,
                         const std::vector<std::pair<Vec, Vec>>& points,
                         double h_fd) {
  if (h_fd < 1e-8 || h_fd > 1e-4)
    throw std::invalid_argument("finite_diff_check: h must lie in [1e-8, 1e-4]");
  double worst = 0.0;
  for (const auto& [x, y] : points) {
    const Vec gx = o.grad_x(x, y);
    const Vec gy = o.grad_y(x, y);
    Vec fdx(x.size()), fdy(y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Vec xp = x, xm = x;
      xp[i] += h_fd;
      xm[i] -= h_fd;
      fdx[i] = (o.phi(xp, y) - o.phi(xm, y)) / (2.0 * h_fd);
    }
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      Vec yp = y, ym = y;
      yp[i] += h_fd;
      ym[i] -= h_fd;
      fdy[i] = (o.phi(x, yp) - o.phi(x, ym)) / (2.0 * h_fd);
    }
    worst = std::max(worst, (fdx - gx).norm() / std::max(1.0, gx.norm()));
    worst = std::max(worst, (fdy - gy).norm() / std::max(1.0, gy.norm()));
  }
  return worst;
}

namespace {

// One side of the suite: anchor/tilt/step against comparison points.
void run_prox_side(const std::function<Vec(const Vec&, const Vec&, double)>& prox,
                   const std::function<double(const Vec&)>& value,
                   const BregmanGeometry& geom, bool tilt_negative, double mu,
                   const std::function<Vec(Rng&)>& sample_anchor,
                   const std::function<Vec(Rng&)>& sample_point, int samples,
                   Rng& rng, ProxSuiteReport& rep) {
  for (int s = 0; s < samples; ++s) {
    const Vec anchor = sample_anchor(rng);
    const Vec point = sample_point(rng);
    const Vec tilt = rng.gaussian_vector(anchor.size());
    const double step = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const Vec plus = prox(anchor, tilt, step);
    // prox objective F(u) = f(u) + <tilt, u> (dual side: h(u) - <tilt, u>)
    const double sgn = tilt_negative ? -1.0 : 1.0;
    const double F_point = value(point) + sgn * tilt.dot(point);
    const double F_plus = value(plus) + sgn * tilt.dot(plus);
    const double t = 1.0 / step;
    const double lhs = F_point + t * geom.distance(point, anchor);
    const double rhs = F_plus + t * geom.distance(plus, anchor) +
                       t * geom.distance(point, plus) +
                       0.5 * mu * (point - plus).squaredNorm();
    const double violation = rhs - lhs;  // positive = inequality broken
    rep.worst_violation = std::max(rep.worst_violation, violation);
    if (violation > 1e-9) rep.pass = false;
    ++rep.samples;
  }
}

}  // namespace

ProxSuiteReport prox_inequality_suite(const SaddleOracle& o,
                                      const ProxSuiteSpec& spec, int samples,
                                      std::uint64_t seed) {
  Rng rng(seed);
  ProxSuiteReport rep;
  run_prox_side(o.prox_f, o.f_value, o.geom_x, /*tilt_negative=*/false,
                spec.mu_f, spec.sample_anchor_x, spec.sample_point_x, samples,
                rng, rep);
  run_prox_side(o.prox_h, o.h_value, o.geom_y, /*tilt_negative=*/true,
                spec.mu_h, spec.sample_anchor_y, spec.sample_point_y, samples,
                rng, rep);
  return rep;
}

double moreau_check(const ConeSpec& cone, int dim, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec w = rng.gaussian_vector(dim) * std::exp(rng.uniform(-1.0, 2.0));
    const Vec minus = cone.project_minus(w);
    const Vec dual = cone.project_dual(w);
    worst = std::max(worst, (w - minus - dual).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(minus.dot(dual)));
  }
  return worst;
}

namespace {

// Enumerate grid points of a box at `res` samples per axis.
std::vector<Vec> grid_points(const Vec& lo, const Vec& hi, int res) {
  const Eigen::Index d = lo.size();
  std::vector<Vec> pts;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec p(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = res > 1 ? static_cast<double>(idx[i]) / (res - 1) : 0.5;
      p[i] = lo[i] + t * (hi[i] - lo[i]);
    }
    pts.push_back(std::move(p));
    Eigen::Index pos = 0;
    while (pos < d) {
      if (++idx[pos] < res) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return pts;
}

}  // namespace

GridSaddle grid_saddle_oracle(const std::function<double(const Vec&, const Vec&)>& L,
                              const Vec& x_lo, const Vec& x_hi, const Vec& y_lo,
                              const Vec& y_hi, int resolution) {
  if (x_lo.size() + y_lo.size() > 3)
    throw std::invalid_argument("grid_saddle_oracle: total dimension must be <= 3");
  if (resolution < 2)
    throw std::invalid_argument("grid_saddle_oracle: resolution must be >= 2");
  const auto xs = grid_points(x_lo, x_hi, resolution);
  const auto ys = grid_points(y_lo, y_hi, resolution);
  GridSaddle out;
  double best = kInf;
  for (const Vec& x : xs) {
    double inner = -kInf;
    Vec y_arg = ys.front();
    for (const Vec& y : ys) {
      const double v = L(x, y);
      if (v > inner) {
        inner = v;
        y_arg = y;
      }
    }
    if (inner < best) {
      best = inner;
      out.x_star = x;
      out.y_star = y_arg;
      out.value = inner;
    }
  }
  return out;
}

double rate_fit(const std::vector<long>& ks, const std::vector<double>& vals) {
  if (ks.size() != vals.size() || ks.empty())
    throw std::invalid_argument("rate_fit: empty or mismatched series");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] <= 0) throw std::invalid_argument("rate_fit: nonpositive k");
    if (vals[i] <= 0.0)
      throw std::invalid_argument("rate_fit: nonpositive metric value in range");
    const double lx = std::log(static_cast<double>(ks[i]));
    const double ly = std::log(vals[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("rate_fit: degenerate abscissa");
  return (n * sxy - sx * sy) / denom;
}

double rate_fit_range(const std::vector<double>& metric_by_k, long k_min, long k_max) {
  std::vector<long> ks;
  std::vector<double> vals;
  for (long k = k_min; k <= k_max && k <= static_cast<long>(metric_by_k.size());
       ++k) {
    ks.push_back(k);
    vals.push_back(metric_by_k[static_cast<std::size_t>(k - 1)]);
  }
  return rate_fit(ks, vals);
}

double schedule_identity_worst(std::uint64_t seed, int configs, int steps) {
  Rng rng(seed);
  double worst = 0.0;
  for (int c = 0; c < configs; ++c) {
    const double mu = rng.uniform(0.0, 10.0);
    double tau = std::exp(rng.uniform(std::log(1e-3), std::log(1.0)));
    double gamma = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    double sigma = gamma * tau;
    for (int k = 0; k < steps; ++k) {
      const auto [gamma_next, tau_next] = apd_schedule_next(gamma, tau, mu);
      const double sigma_next = gamma_next * tau_next;
      const double theta_next = sigma / sigma_next;
      worst = std::max(worst,
                       std::abs(theta_next * std::sqrt(1.0 + mu * tau) - 1.0));
      worst = std::max(worst,
                       std::abs(tau_next - theta_next * tau) / std::max(1e-300, tau));
      worst = std::max(worst, std::abs(sigma_next * theta_next - sigma) /
                                  std::max(1e-300, sigma));
      gamma = gamma_next;
      tau = tau_next;
      sigma = sigma_next;
    }
  }
  return worst;
}

}  // namespace apd
