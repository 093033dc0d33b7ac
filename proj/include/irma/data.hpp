#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irma::data {

// Labeled feature vectors. Labels are contiguous in {1..C}; class_names[c-1]
// names class c. Every class has at least one sample and all samples share
// the same dimension.
struct Dataset {
  std::vector<std::vector<double>> samples;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t size() const { return samples.size(); }
  std::size_t dim() const { return samples.empty() ? 0 : samples[0].size(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }

  std::vector<std::size_t> class_counts() const;
  void validate() const;
};

// Per-feature standardization fitted with the population convention
// (denominator P).
struct ZScoreTransform {
  std::vector<double> means;
  std::vector<double> std_devs;

  std::size_t dim() const { return means.size(); }
};

struct SplitSpec {
  double train_fraction = 0.5;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// --- ingestion ---

enum class CsvFormat {
  auto_detect,
  canonical,     // header row: feature names + "label"
  wdbc,          // ID, M|B diagnosis, 30 features, no header
  segmentation,  // class name first, 19 features, header lines skipped
};

// Loads one or more CSV files (multiple files are merged, as with the UCI
// segmentation train/test pair). Labels are re-encoded to contiguous {1..C}
// in first-seen order; constant-valued feature columns are dropped with a
// warning appended to `warnings`.
Dataset load_csv(const std::vector<std::string>& paths,
                 CsvFormat format = CsvFormat::auto_detect,
                 std::vector<std::string>* warnings = nullptr);

Dataset load_csv(const std::string& path,
                 CsvFormat format = CsvFormat::auto_detect,
                 std::vector<std::string>* warnings = nullptr);

// Writes the canonical CSV form (header: feature names + "label"; label
// column holds the class name).
void save_csv(const Dataset& d, const std::string& path);

// --- synthetic data ---

// Two 4-dimensional Gaussian classes: informative features (x1, x2) with
// class means (-1, -8) and (1, 8) under shared covariance diag(2, 12), plus
// two class-independent standard-normal noise features. Class 1 samples
// precede class 2; bit-identical for a fixed seed.
Dataset gen_two_gaussians(std::size_t n_per_class, std::uint64_t seed);

// --- standardization ---

ZScoreTransform fit_zscore(const Dataset& d);
Dataset apply_zscore(const ZScoreTransform& t, const Dataset& d);
Dataset apply_zscore_inverse(const ZScoreTransform& t, const Dataset& d);

// --- splitting ---

// Per-class train counts are floor(fraction * class_size + 0.5); the
// remainder goes to the test split. Deterministic for a fixed seed.
std::pair<Dataset, Dataset> stratified_split(const Dataset& d,
                                             const SplitSpec& spec);

}  // namespace irma::data
