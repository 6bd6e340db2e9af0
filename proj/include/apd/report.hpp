// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apd/types.hpp"

namespace apd {

enum class Status { converged, budget_exhausted, diverged };

const char* to_string(Status s);

struct IterationRecord {
  long k = 0;
  double tau = 0.0;
  double sigma = 0.0;
  double theta = 0.0;
  int inner_steps = 0;  // 0 for plain APD
  std::optional<double> ek_value;
  std::optional<double> gap_vs_ref;
  std::optional<double> subopt;
  std::optional<double> infeas;
  double elapsed = 0.0;  // seconds since solve start
  std::int64_t grad_x_evals = 0;  // cumulative
  std::int64_t grad_y_evals = 0;  // cumulative
};

struct SolveReport {
  Vec x_final, y_final;
  Vec x_ergodic, y_ergodic;
  std::vector<IterationRecord> records;
  Status status = Status::budget_exhausted;
  EvalCounters evals;
  long outer_iterations = 0;
  double tau0 = 0.0, sigma0 = 0.0;  // schedule anchors, echoed for certificates
  std::string diagnostic;           // populated on divergence
};

}  // namespace apd
