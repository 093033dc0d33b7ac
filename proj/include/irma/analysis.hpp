#pragma once

#include <cstddef>
#include <vector>

#include "irma/data.hpp"
#include "irma/linalg.hpp"
#include "irma/lvq.hpp"

namespace irma::analysis {

// Iterated relevance matrix analysis: train GMLVQ, pull the leading
// eigenvectors out of Lambda, freeze them, and retrain in the orthogonal
// complement until performance drops to chance level, the iteration cap is
// reached, or no directions remain.
struct IrmaConfig {
  int vectors_per_iteration = 1;  // directions harvested per iteration
  int max_iterations = 100;       // highest restricted iteration attempted
  double stop_margin = 0.05;      // stop once bac <= 1/C + stop_margin
  lvq::TrainConfig train;         // must use the adaptive metric
};

struct IterationRecord {
  lvq::GmlvqModel model;
  std::vector<double> eigenvalues;            // full spectrum, descending
  std::vector<linalg::Vector> directions;     // harvested this iteration
  double bac = 0.0;                           // stopping-rule accuracy
};

enum class StopReason { below_chance, iteration_cap, exhausted };

// Ordered collection of orthonormal directions with their origin.
struct Subspace {
  std::vector<linalg::Vector> directions;  // iteration-major
  std::vector<int> source_iteration;       // per direction

  std::size_t dim() const { return directions.size(); }
};

struct IrmaResult {
  std::vector<IterationRecord> records;
  Subspace subspace;
  StopReason stop_reason = StopReason::exhausted;
  double chance_level = 0.0;

  bool stopped_below_chance() const {
    return stop_reason == StopReason::below_chance;
  }
};

// Runs the iteration on `train_data`. The stopping-rule accuracy is
// evaluated on `validation` when given, otherwise on the training data.
// A run that ends below chance keeps its final iteration in `records` but
// leaves those directions out of the subspace.
IrmaResult run(const data::Dataset& train_data, const IrmaConfig& config,
               const data::Dataset* validation = nullptr);

// The `count` leading eigenvectors, Gram-Schmidt orthogonalized against
// `existing` and each other; candidates whose residual drops below 1e-6 are
// skipped. May return fewer than `count` directions.
std::vector<linalg::Vector> harvest(const linalg::SpectralDecomposition& eig,
                                    int count,
                                    const std::vector<linalg::Vector>& existing);
std::vector<linalg::Vector> harvest(const linalg::Matrix& lambda, int count,
                                    const std::vector<linalg::Vector>& existing);

// Coordinates of every sample along the given directions; labels and class
// names carry over, features become component_1..component_k.
data::Dataset project(const data::Dataset& d,
                      const std::vector<linalg::Vector>& directions);

// diag(Lambda): the per-feature relevance of a trained model.
linalg::Vector relevance_profile(const lvq::GmlvqModel& model);

}  // namespace irma::analysis
