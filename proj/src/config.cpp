// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/config.hpp"

#include <stdexcept>

namespace apd {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::apd: return "apd";
    case Algorithm::apdb: return "apdb";
    case Algorithm::apdb_switched: return "apdb-switched";
  }
  return "?";
}

std::string to_string(EkVariant v) {
  return v == EkVariant::exact ? "exact" : "tilde";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "apd") return Algorithm::apd;
  if (s == "apdb") return Algorithm::apdb;
  if (s == "apdb-switched" || s == "apdb_switched") return Algorithm::apdb_switched;
  throw std::invalid_argument("unknown algorithm: " + s);
}

EkVariant ek_variant_from_string(const std::string& s) {
  if (s == "exact") return EkVariant::exact;
  if (s == "tilde") return EkVariant::tilde;
  throw std::invalid_argument("unknown ek variant: " + s);
}

void SolverConfig::validate(const SaddleOracle* oracle) const {
  if (tau0 <= 0.0) throw std::invalid_argument("config: tau0 must be positive");
  if (gamma0 <= 0.0) throw std::invalid_argument("config: gamma0 must be positive");
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("config: delta must lie in [0, 1)");
  if (eta <= 0.0 || eta >= 1.0)
    throw std::invalid_argument("config: eta must lie in (0, 1)");
  if (c_alpha <= 0.0) throw std::invalid_argument("config: c_alpha must be positive");
  if (c_beta < 0.0) throw std::invalid_argument("config: c_beta must be nonnegative");
  if (c_alpha + c_beta + delta > 1.0 + 1e-12)
    throw std::invalid_argument(
        "config: violated step-size admissibility constraint c_alpha + c_beta + delta <= 1");
  if (max_outer <= 0) throw std::invalid_argument("config: max_outer must be positive");
  if (max_inner <= 0) throw std::invalid_argument("config: max_inner must be positive");
  if (tol < 0.0) throw std::invalid_argument("config: tol must be nonnegative");
  if (tau_max && *tau_max <= 0.0)
    throw std::invalid_argument("config: tau_max must be positive");
  if (restart_period && *restart_period <= 0)
    throw std::invalid_argument("config: restart_period must be positive");
  if (mu && *mu < 0.0) throw std::invalid_argument("config: mu must be nonnegative");

  if (algorithm == Algorithm::apdb_switched) {
    if (c_beta <= 0.0)
      throw std::invalid_argument(
          "config: the switched variant requires c_beta > 0 (both gradient-difference "
          "terms of its test function are active)");
    return;
  }
  if (oracle && oracle->lipschitz) {
    const bool lyy_pos = oracle->lipschitz->L_yy > 0.0;
    if (lyy_pos && c_beta <= 0.0)
      throw std::invalid_argument(
          "config: c_beta must be positive when L_yy > 0");
    if (!lyy_pos && c_beta != 0.0)
      throw std::invalid_argument(
          "config: c_beta must be zero when L_yy = 0");
  }
}

SolverConfig default_config(const SaddleOracle& o, Algorithm alg) {
  SolverConfig cfg;
  cfg.algorithm = alg;
  cfg.delta = 1e-3;
  cfg.eta = 0.7;
  const bool lyy_pos = o.lipschitz && o.lipschitz->L_yy > 0.0;
  if (alg == Algorithm::apdb_switched || lyy_pos) {
    cfg.c_alpha = 0.49;
    cfg.c_beta = 0.49;
  } else {
    cfg.c_alpha = 0.999 - cfg.delta;
    cfg.c_beta = 0.0;
  }
  return cfg;
}

}  // namespace apd
