#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irma/data.hpp"
#include "irma/linalg.hpp"

namespace irma::lvq {

using linalg::Vector;

// GLVQ keeps the metric fixed at squared Euclidean (Lambda = I/N); GMLVQ
// adapts the full relevance matrix Lambda = Omega^T Omega jointly with the
// prototypes.
enum class Mode { glvq, gmlvq };

struct TrainConfig {
  int epochs = 30;
  double step_prototype = 0.1;
  double step_omega = 0.01;
  int prototypes_per_class = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::gmlvq;
  // Per-epoch multiplicative step-size decay; 1 keeps the steps constant.
  double step_decay = 1.0;
};

struct PrototypeSet {
  std::vector<Vector> prototypes;
  std::vector<int> labels;  // class of each prototype, in {1..C}

  std::size_t size() const { return prototypes.size(); }
};

struct GmlvqModel {
  PrototypeSet prototypes;
  linalg::Matrix omega;  // N x N auxiliary matrix, Lambda = Omega^T Omega
  std::vector<Vector> frozen_directions;
  Mode mode = Mode::gmlvq;

  std::size_t dim() const { return omega.rows(); }
  int num_classes() const;
  linalg::Matrix lambda() const;  // Omega^T Omega
};

// Adaptive squared distance (x-w)^T Lambda (x-w), computed as |Omega(x-w)|^2.
double distance(const GmlvqModel& model, const Vector& w, const Vector& x);

// Relative-distance cost: sum over samples of (d+ - d-)/(d+ + d-), where d+
// is the distance to the closest prototype of the sample's class and d- the
// closest distance among all other prototypes. Each term lies in [-1, 1].
double cost(const GmlvqModel& model, const data::Dataset& d);

// Gradients of the cost over a dataset with respect to every prototype and
// to Omega, without the post-update constraints. Feeds the
// finite-difference checks.
struct CostGradients {
  std::vector<Vector> prototype_gradients;
  linalg::Matrix omega_gradient;
};
CostGradients cost_gradients(const GmlvqModel& model, const data::Dataset& d);

// One stochastic update: moves the closest-correct prototype toward the
// sample and the closest-wrong one away, then (in GMLVQ mode) descends
// Omega, projects out the frozen directions, and renormalizes to unit trace.
// Returns false when the sample was skipped because d+ + d- = 0.
bool sgd_step(GmlvqModel& model, const Vector& x, int label,
              double eta_prototype, double eta_omega);

// Prototypes at the class-conditional means (with seeded sigma=1e-4 jitter
// when several prototypes share a class), Omega = I/sqrt(N) deflated against
// the frozen directions and renormalized.
GmlvqModel init_model(const data::Dataset& d, const TrainConfig& config,
                      const std::vector<Vector>& frozen_directions = {});

struct TrainTrace {
  double initial_cost = 0.0;
  // Running per-epoch sums of the cost terms seen during that epoch.
  std::vector<double> epoch_costs;
  std::size_t skipped_samples = 0;
};

// Runs config.epochs passes of stochastic gradient descent over per-epoch
// reshuffles of the dataset. Deterministic: identical inputs and seed give a
// bit-identical model.
GmlvqModel train(const data::Dataset& d, const TrainConfig& config,
                 const std::vector<Vector>& frozen_directions = {},
                 TrainTrace* trace = nullptr);

// Label of the nearest prototype; ties go to the lowest prototype index.
int predict(const GmlvqModel& model, const Vector& x);

// --- serialization (versioned JSON, lossless float round-trip) ---

std::string model_to_json(const GmlvqModel& model, const TrainConfig& config);
std::pair<GmlvqModel, TrainConfig> model_from_json(const std::string& text);
void save_model(const GmlvqModel& model, const TrainConfig& config,
                const std::string& path);
std::pair<GmlvqModel, TrainConfig> load_model(const std::string& path);

}  // namespace irma::lvq
