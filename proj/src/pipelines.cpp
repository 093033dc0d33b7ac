#include "irma/pipelines.hpp"

#include <limits>
#include <utility>

#include "irma/analysis.hpp"
#include "irma/errors.hpp"
#include "irma/rng.hpp"

namespace irma::pipelines {

namespace {

lvq::TrainConfig with_mode(const lvq::TrainConfig& base, lvq::Mode mode) {
  lvq::TrainConfig c = base;
  c.mode = mode;
  return c;
}

}  // namespace

std::size_t retained_leading_count(const std::vector<double>& eigenvalues,
                                   double mass) {
  if (eigenvalues.empty())
    throw ValidationError("empty eigenvalue list");
  if (mass <= 0.0 || mass > 1.0)
    throw ValidationError("variance mass must lie in (0, 1]");
  double total = 0.0;
  for (double v : eigenvalues) total += v;
  if (total <= 0.0)
    throw NumericError("eigenvalue sum is not positive");
  double cumulative = 0.0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    cumulative += eigenvalues[k];
    if (cumulative >= mass * total) return k + 1;
  }
  return eigenvalues.size();
}

eval::RepeatOutcome pipeline_original(const data::Dataset& train,
                                      const data::Dataset& test,
                                      const lvq::TrainConfig& base) {
  const lvq::GmlvqModel model =
      lvq::train(train, with_mode(base, lvq::Mode::glvq));
  return {eval::balanced_accuracy(model, test), train.dim()};
}

eval::RepeatOutcome glvq_in_subspace(
    const data::Dataset& train, const data::Dataset& test,
    const std::vector<linalg::Vector>& directions,
    const lvq::TrainConfig& base) {
  const data::Dataset train_p = analysis::project(train, directions);
  const data::Dataset test_p = analysis::project(test, directions);
  const lvq::GmlvqModel model =
      lvq::train(train_p, with_mode(base, lvq::Mode::glvq));
  return {eval::balanced_accuracy(model, test_p), directions.size()};
}

eval::RepeatOutcome pipeline_gmlvq_space(const data::Dataset& train,
                                         const data::Dataset& test,
                                         const lvq::TrainConfig& base,
                                         double variance_mass) {
  const lvq::GmlvqModel model =
      lvq::train(train, with_mode(base, lvq::Mode::gmlvq));
  const auto eig = linalg::sym_eig(model.lambda());
  const std::size_t k = retained_leading_count(eig.eigenvalues, variance_mass);
  std::vector<linalg::Vector> directions;
  directions.reserve(k);
  for (std::size_t j = 0; j < k; ++j)
    directions.push_back(eig.eigenvector(j));
  return glvq_in_subspace(train, test, directions, base);
}

eval::RepeatOutcome pipeline_irma_space(const data::Dataset& train,
                                        const data::Dataset& test,
                                        const lvq::TrainConfig& base,
                                        const ForwardSelection& selection) {
  if (selection.tolerance < 0.0)
    throw ValidationError("selection tolerance must be non-negative");
  if (selection.patience < 1)
    throw ValidationError("selection patience must be positive");

  const lvq::TrainConfig metric = with_mode(base, lvq::Mode::gmlvq);
  const lvq::TrainConfig plain = with_mode(base, lvq::Mode::glvq);
  const std::size_t n = train.dim();

  // Grow the subspace one direction per iteration; at each size retrain a
  // GLVQ inside it and watch the training accuracy.
  std::vector<linalg::Vector> subspace;
  std::vector<lvq::GmlvqModel> candidates;
  std::vector<double> train_bacs;
  double best = -std::numeric_limits<double>::infinity();
  int stale = 0;

  for (int iteration = 0; subspace.size() < n; ++iteration) {
    lvq::TrainConfig iter_config = metric;
    iter_config.seed = rng::derive_seed(metric.seed, "iteration",
                                        static_cast<std::uint64_t>(iteration));
    const lvq::GmlvqModel model = lvq::train(train, iter_config, subspace);
    auto picked = analysis::harvest(model.lambda(), 1, subspace);
    if (picked.empty()) break;
    subspace.push_back(std::move(picked.front()));

    const data::Dataset train_p = analysis::project(train, subspace);
    candidates.push_back(lvq::train(train_p, plain));
    train_bacs.push_back(eval::balanced_accuracy(candidates.back(), train_p));

    if (train_bacs.back() > best) {
      best = train_bacs.back();
      stale = 0;
    } else if (++stale >= selection.patience) {
      break;
    }
  }

  if (candidates.empty())
    throw NumericError("no discriminative direction could be extracted");

  std::size_t chosen = 0;
  while (chosen + 1 < train_bacs.size() &&
         train_bacs[chosen] < best - selection.tolerance)
    ++chosen;

  const std::vector<linalg::Vector> kept(subspace.begin(),
                                         subspace.begin() + chosen + 1);
  const data::Dataset test_p = analysis::project(test, kept);
  return {eval::balanced_accuracy(candidates[chosen], test_p), kept.size()};
}

}  // namespace irma::pipelines
