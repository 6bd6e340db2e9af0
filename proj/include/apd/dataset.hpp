// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apd/types.hpp"

namespace apd {

/// Feature matrix (rows = observations) with ±1 labels. Features are
/// normalized: every column mean-centered and divided by its (population)
/// standard deviation; constant columns are dropped with a warning.
struct Dataset {
  Mat features;
  Vec labels;
};

/// Normalize columns in place; returns the indices of dropped constant
/// columns (std below 1e-12).
std::vector<int> normalize_features(Mat& features);

/// CSV ingestion: header row, numeric feature columns, one label column
/// selected by name. Labels must be in {-1,+1} ({0,1} is remapped). Throws
/// on ragged rows, non-numeric cells, or an empty file.
Dataset load_csv_dataset(const std::string& path, const std::string& label_column);

/// Write a dataset back out (used for round-trip checks and exports).
void save_csv_dataset(const std::string& path, const Dataset& d,
                      const std::string& label_column = "label");

/// Two unit-variance Gaussian blobs in the plane at (+/- separation/2, 0),
/// classes alternating so any prefix split stays balanced. Features are
/// normalized after sampling. Deterministic given the seed.
Dataset make_blobs(int n_points, double separation, std::uint64_t seed);

}  // namespace apd
