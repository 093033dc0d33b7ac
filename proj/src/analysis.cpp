#include "irma/analysis.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "irma/errors.hpp"
#include "irma/eval.hpp"
#include "irma/rng.hpp"

namespace irma::analysis {

namespace {

constexpr double kResidualFloor = 1e-6;

// Removes the components of v along each direction; two passes keep the
// result orthogonal even when v nearly lies in their span.
void orthogonalize(linalg::Vector& v,
                   const std::vector<linalg::Vector>& directions) {
  for (int pass = 0; pass < 2; ++pass)
    for (const linalg::Vector& u : directions) {
      const double c = linalg::dot(v, u);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * u[k];
    }
}

}  // namespace

std::vector<linalg::Vector> harvest(
    const linalg::SpectralDecomposition& eig, int count,
    const std::vector<linalg::Vector>& existing) {
  if (count < 1) throw ValidationError("harvest count must be positive");
  std::vector<linalg::Vector> picked;
  for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
    if (static_cast<int>(picked.size()) == count) break;
    linalg::Vector v = eig.eigenvector(j);
    orthogonalize(v, existing);
    orthogonalize(v, picked);
    const double r = linalg::norm(v);
    if (r < kResidualFloor) continue;
    for (double& x : v) x /= r;
    picked.push_back(std::move(v));
  }
  return picked;
}

std::vector<linalg::Vector> harvest(
    const linalg::Matrix& lambda, int count,
    const std::vector<linalg::Vector>& existing) {
  return harvest(linalg::sym_eig(lambda), count, existing);
}

IrmaResult run(const data::Dataset& train_data, const IrmaConfig& config,
               const data::Dataset* validation) {
  if (config.vectors_per_iteration < 1)
    throw ValidationError("vectors_per_iteration must be positive");
  if (config.max_iterations < 0)
    throw ValidationError("max_iterations must be non-negative");
  if (config.stop_margin < 0.0)
    throw ValidationError("stop_margin must be non-negative");
  if (config.train.mode != lvq::Mode::gmlvq)
    throw ValidationError("the iteration requires the adaptive metric");
  train_data.validate();

  const std::size_t n = train_data.dim();
  const data::Dataset& holdout = validation ? *validation : train_data;

  IrmaResult result;
  result.chance_level = 1.0 / train_data.num_classes();
  std::vector<linalg::Vector> frozen;

  for (int iteration = 0;; ++iteration) {
    if (iteration > config.max_iterations) {
      result.stop_reason = StopReason::iteration_cap;
      break;
    }
    if (frozen.size() >= n) {
      result.stop_reason = StopReason::exhausted;
      break;
    }

    lvq::TrainConfig iter_config = config.train;
    iter_config.seed = rng::derive_seed(config.train.seed, "iteration",
                                        static_cast<std::uint64_t>(iteration));

    IterationRecord record;
    record.model = lvq::train(train_data, iter_config, frozen);
    record.bac = eval::balanced_accuracy(record.model, holdout);

    const auto eig = linalg::sym_eig(record.model.lambda());
    record.eigenvalues = eig.eigenvalues;
    record.directions = harvest(eig, config.vectors_per_iteration, frozen);

    const bool below_chance =
        record.bac <= result.chance_level + config.stop_margin;
    const bool empty_harvest = record.directions.empty();
    result.records.push_back(std::move(record));

    if (below_chance) {
      result.stop_reason = StopReason::below_chance;
      break;
    }
    if (empty_harvest) {
      result.stop_reason = StopReason::exhausted;
      break;
    }
    const IterationRecord& kept = result.records.back();
    frozen.insert(frozen.end(), kept.directions.begin(),
                  kept.directions.end());
  }

  // Assemble the subspace; a below-chance final iteration contributes
  // nothing.
  const std::size_t usable =
      result.records.size() -
      (result.stop_reason == StopReason::below_chance ? 1 : 0);
  for (std::size_t j = 0; j < usable; ++j)
    for (const linalg::Vector& v : result.records[j].directions) {
      result.subspace.directions.push_back(v);
      result.subspace.source_iteration.push_back(static_cast<int>(j));
    }
  return result;
}

data::Dataset project(const data::Dataset& d,
                      const std::vector<linalg::Vector>& directions) {
  if (directions.empty())
    throw ValidationError("projection needs at least one direction");
  for (const linalg::Vector& v : directions)
    if (v.size() != d.dim())
      throw ShapeMismatch("projection direction does not match the data");

  data::Dataset out;
  out.labels = d.labels;
  out.class_names = d.class_names;
  for (std::size_t j = 0; j < directions.size(); ++j)
    out.feature_names.push_back("component_" + std::to_string(j + 1));
  out.samples.reserve(d.size());
  for (const auto& x : d.samples) {
    std::vector<double> y(directions.size());
    for (std::size_t j = 0; j < directions.size(); ++j)
      y[j] = linalg::dot(directions[j], x);
    out.samples.push_back(std::move(y));
  }
  return out;
}

linalg::Vector relevance_profile(const lvq::GmlvqModel& model) {
  const std::size_t n = model.dim();
  linalg::Vector diag(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += model.omega(i, k) * model.omega(i, k);
    diag[k] = s;
  }
  return diag;
}

}  // namespace irma::analysis
