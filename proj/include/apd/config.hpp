// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>

#include "apd/oracle.hpp"

namespace apd {

enum class Algorithm { apd, apdb, apdb_switched };
enum class EkVariant { exact, tilde };

std::string to_string(Algorithm a);
std::string to_string(EkVariant v);
Algorithm algorithm_from_string(const std::string& s);
EkVariant ek_variant_from_string(const std::string& s);

/// Algorithm selection and all tunables of a solve.
///
/// tau0 is the initial primal step (the backtracking cap tau_bar for apdb);
/// sigma0 = gamma0 * tau0 throughout.
struct SolverConfig {
  Algorithm algorithm = Algorithm::apdb;
  std::optional<double> mu;  // overrides the oracle's modulus when set
  double tau0 = 1.0;
  double gamma0 = 1.0;
  double delta = 1e-3;
  double c_alpha = 0.998;
  double c_beta = 0.0;
  double eta = 0.7;
  std::optional<double> tau_max;  // enables the non-monotone step rule
  long max_outer = 1000;
  int max_inner = 60;
  double tol = 0.0;  // 0 disables the tolerance-based stop
  std::optional<long> restart_period;
  EkVariant ek_variant = EkVariant::exact;

  double sigma0() const { return gamma0 * tau0; }
  double effective_mu(const SaddleOracle& o) const { return mu ? *mu : o.mu; }

  /// Throws std::invalid_argument naming the violated admissibility
  /// constraint. When the oracle carries Lipschitz constants the
  /// c_beta-vs-L_yy pairing is enforced as well.
  void validate(const SaddleOracle* oracle = nullptr) const;
};

/// Defaults per the smoothness regime: delta=1e-3, eta=0.7;
/// c_alpha = c_beta = 0.49 when L_yy > 0 (or for the switched variant, where
/// both terms of the test function are active); else c_alpha = 0.999 - delta,
/// c_beta = 0.
SolverConfig default_config(const SaddleOracle& o, Algorithm alg);

}  // namespace apd
