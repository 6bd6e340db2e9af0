// Copyright 2026 apdsolve contributors
// Licensed under the Apache License, Version 2.0.

#include "apd/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "apd/rng.hpp"

namespace apd {

std::vector<int> normalize_features(Mat& features) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  std::vector<int> keep, dropped;
  std::vector<double> mean(d), stddev(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    mean[j] = features.col(j).mean();
    stddev[j] = std::sqrt((features.col(j).array() - mean[j]).square().mean());
    if (stddev[j] < 1e-12)
      dropped.push_back(static_cast<int>(j));
    else
      keep.push_back(static_cast<int>(j));
  }
  Mat out(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const int j = keep[k];
    out.col(static_cast<Eigen::Index>(k)) =
        (features.col(j).array() - mean[j]) / stddev[j];
  }
  features = std::move(out);
  return dropped;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& s, int row, int col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\r')) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("load_csv_dataset: non-numeric cell '" + s +
                             "' at row " + std::to_string(row) + ", column " +
                             std::to_string(col));
  }
}

}  // namespace

Dataset load_csv_dataset(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv_dataset: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_csv_dataset: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  int label_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = static_cast<int>(j);
  if (label_idx < 0)
    throw std::runtime_error("load_csv_dataset: label column '" + label_column +
                             "' not found");

  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  int row_no = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error("load_csv_dataset: ragged row " +
                               std::to_string(row_no));
    std::vector<double> feat;
    feat.reserve(cells.size() - 1);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const double v = parse_cell(cells[j], row_no, static_cast<int>(j));
      if (static_cast<int>(j) == label_idx)
        labels.push_back(v);
      else
        feat.push_back(v);
    }
    rows.push_back(std::move(feat));
    ++row_no;
  }
  if (rows.empty()) throw std::runtime_error("load_csv_dataset: no data rows");

  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  d.labels.resize(static_cast<Eigen::Index>(labels.size()));
  bool zero_one = true;
  for (double v : labels)
    if (v != 0.0 && v != 1.0) zero_one = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    double v = labels[i];
    if (zero_one) v = v == 1.0 ? 1.0 : -1.0;
    if (v != 1.0 && v != -1.0)
      throw std::runtime_error(
          "load_csv_dataset: labels must be in {-1,+1} or {0,1}");
    d.labels[static_cast<Eigen::Index>(i)] = v;
  }

  const auto dropped = normalize_features(d.features);
  for (int j : dropped)
    std::fprintf(stderr, "[dataset] warning: dropped constant feature column %d\n", j);
  return d;
}

void save_csv_dataset(const std::string& path, const Dataset& d,
                      const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv_dataset: cannot write " + path);
  for (Eigen::Index j = 0; j < d.features.cols(); ++j) out << "f" << j << ",";
  out << label_column << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < d.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.features.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.features(i, j));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof(buf), "%g", d.labels[i]);
    out << buf << "\n";
  }
}

Dataset make_blobs(int n_points, double separation, std::uint64_t seed) {
  if (n_points < 2) throw std::invalid_argument("make_blobs: need at least 2 points");
  Rng rng(seed);
  Dataset d;
  d.features.resize(n_points, 2);
  d.labels.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double cls = (i % 2 == 0) ? 1.0 : -1.0;
    d.labels[i] = cls;
    d.features(i, 0) = cls * separation / 2.0 + rng.gaussian();
    d.features(i, 1) = rng.gaussian();
  }
  normalize_features(d.features);
  return d;
}

}  // namespace apd
