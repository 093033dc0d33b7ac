#include "irma/lvq.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>
#include <utility>

#include "json.hpp"

#include "irma/errors.hpp"
#include "irma/format.hpp"
#include "irma/rng.hpp"

namespace irma::lvq {

namespace {

constexpr double kRelevanceFloor = 1e-10;
constexpr double kOrthoTol = 1e-8;
constexpr double kJitterSigma = 1e-4;

// Scratch buffers reused across all samples of a training run.
struct Workspace {
  std::vector<double> diff;  // m x n, x - w_j per prototype
  std::vector<double> proj;  // m x n, Omega (x - w_j) per prototype
  std::vector<double> dist;
  std::vector<double> grad;  // n, Omega^T proj for the winner updates

  Workspace(std::size_t m, std::size_t n)
      : diff(m * n), proj(m * n), dist(m), grad(n) {}
};

struct SampleTerms {
  std::size_t correct, wrong;      // winning prototype indices
  double d_correct, d_wrong;
  double gamma_correct, gamma_wrong;
  double mu;                       // (d+ - d-)/(d+ + d-)
  bool degenerate;                 // d+ + d- = 0, no update possible
};

// Distances to every prototype plus the closest-correct / closest-wrong
// pair. Fills ws.diff and ws.proj; ties go to the lowest prototype index.
SampleTerms evaluate_sample(const GmlvqModel& model, const Vector& x,
                            int label, Workspace& ws) {
  const std::size_t n = model.dim();
  const std::size_t m = model.prototypes.size();
  const linalg::Matrix& omega = model.omega;

  for (std::size_t j = 0; j < m; ++j) {
    const Vector& w = model.prototypes.prototypes[j];
    double* u = ws.diff.data() + j * n;
    double* z = ws.proj.data() + j * n;
    for (std::size_t k = 0; k < n; ++k) u[k] = x[k] - w[k];
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = omega.row(i);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += row[k] * u[k];
      z[i] = s;
      d += s * s;
    }
    ws.dist[j] = d;
  }

  SampleTerms t{};
  bool have_correct = false, have_wrong = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (model.prototypes.labels[j] == label) {
      if (!have_correct || ws.dist[j] < t.d_correct) {
        t.correct = j;
        t.d_correct = ws.dist[j];
        have_correct = true;
      }
    } else if (!have_wrong || ws.dist[j] < t.d_wrong) {
      t.wrong = j;
      t.d_wrong = ws.dist[j];
      have_wrong = true;
    }
  }
  if (!have_correct)
    throw ValidationError("no prototype carries label " +
                          std::to_string(label));
  if (!have_wrong)
    throw ValidationError("all prototypes carry label " +
                          std::to_string(label));

  const double denom = t.d_correct + t.d_wrong;
  if (denom == 0.0) {
    t.degenerate = true;
    return t;
  }
  t.mu = (t.d_correct - t.d_wrong) / denom;
  t.gamma_correct = 2.0 * t.d_wrong / (denom * denom);
  t.gamma_wrong = -2.0 * t.d_correct / (denom * denom);
  return t;
}

// Omega <- Omega [I - sum v v^T], in place.
void deflate(linalg::Matrix& omega, const std::vector<Vector>& directions) {
  const std::size_t n = omega.cols();
  for (const Vector& v : directions) {
    for (std::size_t i = 0; i < omega.rows(); ++i) {
      double* row = omega.row(i);
      double c = 0.0;
      for (std::size_t k = 0; k < n; ++k) c += row[k] * v[k];
      for (std::size_t k = 0; k < n; ++k) row[k] -= c * v[k];
    }
  }
}

void renormalize(linalg::Matrix& omega) {
  const double f = omega.frobenius_norm();
  if (f < kRelevanceFloor)
    throw AllRelevanceRemoved(
        "relevance matrix vanished after removing the frozen directions");
  for (double& e : omega.entries()) e /= f;
}

struct StepOutcome {
  bool updated;
  double mu;
};

StepOutcome step(GmlvqModel& model, const Vector& x, int label,
                 double eta_prototype, double eta_omega, Workspace& ws) {
  const SampleTerms t = evaluate_sample(model, x, label, ws);
  if (t.degenerate) return {false, 0.0};

  const std::size_t n = model.dim();
  const double* u_c = ws.diff.data() + t.correct * n;
  const double* u_w = ws.diff.data() + t.wrong * n;
  const double* z_c = ws.proj.data() + t.correct * n;
  const double* z_w = ws.proj.data() + t.wrong * n;

  // Prototype updates use Lambda u = Omega^T (Omega u) from before the step.
  for (int side = 0; side < 2; ++side) {
    const double* z = side == 0 ? z_c : z_w;
    const double scale =
        2.0 * eta_prototype * (side == 0 ? t.gamma_correct : t.gamma_wrong);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += model.omega(i, k) * z[i];
      ws.grad[k] = s;
    }
    Vector& w = model.prototypes
                    .prototypes[side == 0 ? t.correct : t.wrong];
    for (std::size_t k = 0; k < n; ++k) w[k] += scale * ws.grad[k];
  }

  if (model.mode == Mode::gmlvq) {
    // dE/dOmega = 2 (gamma+ z+ u+^T + gamma- z- u-^T), rank two.
    const double a = 2.0 * eta_omega * t.gamma_correct;
    const double b = 2.0 * eta_omega * t.gamma_wrong;
    for (std::size_t i = 0; i < n; ++i) {
      double* row = model.omega.row(i);
      const double zc = a * z_c[i];
      const double zw = b * z_w[i];
      for (std::size_t k = 0; k < n; ++k)
        row[k] -= zc * u_c[k] + zw * u_w[k];
    }
    if (!model.frozen_directions.empty())
      deflate(model.omega, model.frozen_directions);
    renormalize(model.omega);
  }
  return {true, t.mu};
}

void check_frozen(const std::vector<Vector>& directions, std::size_t n) {
  for (std::size_t a = 0; a < directions.size(); ++a) {
    if (directions[a].size() != n)
      throw ShapeMismatch("frozen direction " + std::to_string(a) + " has " +
                          std::to_string(directions[a].size()) +
                          " components, expected " + std::to_string(n));
    if (std::abs(linalg::norm(directions[a]) - 1.0) > kOrthoTol)
      throw NonUnitDirection("frozen direction " + std::to_string(a) +
                             " is not unit length");
    for (std::size_t b = 0; b < a; ++b)
      if (std::abs(linalg::dot(directions[a], directions[b])) > kOrthoTol)
        throw ValidationError("frozen directions " + std::to_string(b) +
                              " and " + std::to_string(a) +
                              " are not orthogonal");
  }
}

void check_config(const TrainConfig& config) {
  if (config.epochs < 1) throw ValidationError("epochs must be at least 1");
  if (config.prototypes_per_class < 1)
    throw ValidationError("need at least one prototype per class");
  if (config.step_prototype <= 0.0 || config.step_omega <= 0.0)
    throw ValidationError("step sizes must be positive");
  if (config.step_decay <= 0.0 || config.step_decay > 1.0)
    throw ValidationError("step decay must lie in (0, 1]");
}

}  // namespace

int GmlvqModel::num_classes() const {
  int c = 0;
  for (int label : prototypes.labels) c = std::max(c, label);
  return c;
}

linalg::Matrix GmlvqModel::lambda() const {
  return linalg::matmul(linalg::transpose(omega), omega);
}

double distance(const GmlvqModel& model, const Vector& w, const Vector& x) {
  const std::size_t n = model.dim();
  if (w.size() != n || x.size() != n)
    throw ShapeMismatch("distance operands do not match the model dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = model.omega.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += row[k] * (x[k] - w[k]);
    d += s * s;
  }
  return d;
}

double cost(const GmlvqModel& model, const data::Dataset& d) {
  if (d.dim() != model.dim())
    throw ShapeMismatch("dataset dimension does not match the model");
  Workspace ws(model.prototypes.size(), model.dim());
  double total = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p) {
    const SampleTerms t = evaluate_sample(model, d.samples[p], d.labels[p], ws);
    if (t.degenerate)
      throw DegenerateDistance("sample " + std::to_string(p) +
                               " coincides with both winning prototypes");
    total += t.mu;
  }
  return total;
}

CostGradients cost_gradients(const GmlvqModel& model, const data::Dataset& d) {
  if (d.dim() != model.dim())
    throw ShapeMismatch("dataset dimension does not match the model");
  const std::size_t n = model.dim();
  const std::size_t m = model.prototypes.size();
  Workspace ws(m, n);

  CostGradients g;
  g.prototype_gradients.assign(m, Vector(n, 0.0));
  g.omega_gradient = linalg::Matrix(n, n);

  for (std::size_t p = 0; p < d.size(); ++p) {
    const SampleTerms t = evaluate_sample(model, d.samples[p], d.labels[p], ws);
    if (t.degenerate)
      throw DegenerateDistance("sample " + std::to_string(p) +
                               " coincides with both winning prototypes");
    for (int side = 0; side < 2; ++side) {
      const std::size_t j = side == 0 ? t.correct : t.wrong;
      const double gamma = side == 0 ? t.gamma_correct : t.gamma_wrong;
      const double* z = ws.proj.data() + j * n;
      const double* u = ws.diff.data() + j * n;
      Vector& gw = g.prototype_gradients[j];
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += model.omega(i, k) * z[i];
        gw[k] -= 2.0 * gamma * s;
      }
      for (std::size_t i = 0; i < n; ++i) {
        double* row = g.omega_gradient.row(i);
        const double zi = 2.0 * gamma * z[i];
        for (std::size_t k = 0; k < n; ++k) row[k] += zi * u[k];
      }
    }
  }
  return g;
}

bool sgd_step(GmlvqModel& model, const Vector& x, int label,
              double eta_prototype, double eta_omega) {
  if (x.size() != model.dim())
    throw ShapeMismatch("sample dimension does not match the model");
  Workspace ws(model.prototypes.size(), model.dim());
  return step(model, x, label, eta_prototype, eta_omega, ws).updated;
}

GmlvqModel init_model(const data::Dataset& d, const TrainConfig& config,
                      const std::vector<Vector>& frozen_directions) {
  d.validate();
  check_config(config);
  if (d.num_classes() < 2)
    throw ValidationError("training needs at least two classes");
  const std::size_t n = d.dim();
  if (config.mode == Mode::glvq && !frozen_directions.empty())
    throw ValidationError("frozen directions require the adaptive metric");
  check_frozen(frozen_directions, n);

  const int classes = d.num_classes();
  std::vector<Vector> means(classes, Vector(n, 0.0));
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t p = 0; p < d.size(); ++p) {
    Vector& m = means[d.labels[p] - 1];
    for (std::size_t k = 0; k < n; ++k) m[k] += d.samples[p][k];
    ++counts[d.labels[p] - 1];
  }
  for (int c = 0; c < classes; ++c)
    for (std::size_t k = 0; k < n; ++k) means[c][k] /= counts[c];

  GmlvqModel model;
  model.mode = config.mode;
  for (int c = 0; c < classes; ++c)
    for (int p = 0; p < config.prototypes_per_class; ++p) {
      model.prototypes.prototypes.push_back(means[c]);
      model.prototypes.labels.push_back(c + 1);
    }
  if (config.prototypes_per_class > 1) {
    auto jitter = rng::Generator::stream(config.seed, "jitter");
    for (Vector& w : model.prototypes.prototypes)
      for (std::size_t k = 0; k < n; ++k) w[k] += kJitterSigma * jitter.normal();
  }

  model.omega = linalg::Matrix(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) model.omega(i, i) = scale;
  model.frozen_directions = frozen_directions;
  if (config.mode == Mode::gmlvq && !frozen_directions.empty()) {
    deflate(model.omega, model.frozen_directions);
    renormalize(model.omega);
  }
  return model;
}

GmlvqModel train(const data::Dataset& d, const TrainConfig& config,
                 const std::vector<Vector>& frozen_directions,
                 TrainTrace* trace) {
  GmlvqModel model = init_model(d, config, frozen_directions);
  if (trace) {
    trace->initial_cost = cost(model, d);
    trace->epoch_costs.clear();
    trace->skipped_samples = 0;
  }

  auto shuffler = rng::Generator::stream(config.seed, "shuffle");
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Workspace ws(model.prototypes.size(), model.dim());

  double eta_prototype = config.step_prototype;
  double eta_omega = config.step_omega;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffler.shuffle(order);
    double epoch_cost = 0.0;
    std::size_t skipped = 0;
    for (std::size_t idx : order) {
      const StepOutcome out =
          step(model, d.samples[idx], d.labels[idx], eta_prototype, eta_omega,
               ws);
      if (out.updated)
        epoch_cost += out.mu;
      else
        ++skipped;
    }
    if (trace) {
      trace->epoch_costs.push_back(epoch_cost);
      trace->skipped_samples += skipped;
    }
    eta_prototype *= config.step_decay;
    eta_omega *= config.step_decay;
  }
  return model;
}

int predict(const GmlvqModel& model, const Vector& x) {
  if (x.size() != model.dim())
    throw ShapeMismatch("sample dimension does not match the model");
  if (model.prototypes.size() == 0)
    throw ValidationError("model has no prototypes");
  std::size_t best = 0;
  double best_d = distance(model, model.prototypes.prototypes[0], x);
  for (std::size_t j = 1; j < model.prototypes.size(); ++j) {
    const double dj = distance(model, model.prototypes.prototypes[j], x);
    if (dj < best_d) {
      best = j;
      best_d = dj;
    }
  }
  return model.prototypes.labels[best];
}

// --- serialization ---

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kModelFormat = "irma-model";
constexpr int kModelVersion = 1;

json matrix_to_json(const linalg::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

linalg::Matrix matrix_from_json(const json& rows, std::size_t n) {
  if (rows.size() != n) throw IoError("model field has the wrong row count");
  linalg::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows.at(i);
    if (row.size() != n)
      throw IoError("model field has the wrong column count");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = row.at(k).get<double>();
  }
  return m;
}

}  // namespace

std::string model_to_json(const GmlvqModel& model, const TrainConfig& config) {
  json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["dim"] = model.dim();
  doc["num_classes"] = model.num_classes();
  doc["mode"] = model.mode == Mode::glvq ? "glvq" : "gmlvq";
  doc["prototypes"] = model.prototypes.prototypes;
  doc["prototype_labels"] = model.prototypes.labels;
  doc["omega"] = matrix_to_json(model.omega);
  doc["frozen_directions"] = model.frozen_directions;
  doc["config"] = {{"epochs", config.epochs},
                   {"step_prototype", config.step_prototype},
                   {"step_omega", config.step_omega},
                   {"prototypes_per_class", config.prototypes_per_class},
                   {"seed", config.seed},
                   {"mode", config.mode == Mode::glvq ? "glvq" : "gmlvq"},
                   {"step_decay", config.step_decay}};
  return doc.dump(2) + "\n";
}

std::pair<GmlvqModel, TrainConfig> model_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kModelFormat)
      throw IoError("not a model file");
    if (doc.at("version").get<int>() != kModelVersion)
      throw IoError("unsupported model version");
    const auto n = doc.at("dim").get<std::size_t>();

    auto parse_mode = [](const std::string& s) {
      if (s == "glvq") return Mode::glvq;
      if (s == "gmlvq") return Mode::gmlvq;
      throw IoError("unknown mode \"" + s + "\"");
    };

    GmlvqModel model;
    model.mode = parse_mode(doc.at("mode").get<std::string>());
    model.prototypes.prototypes =
        doc.at("prototypes").get<std::vector<Vector>>();
    model.prototypes.labels =
        doc.at("prototype_labels").get<std::vector<int>>();
    model.omega = matrix_from_json(doc.at("omega"), n);
    model.frozen_directions =
        doc.at("frozen_directions").get<std::vector<Vector>>();

    if (model.prototypes.prototypes.size() != model.prototypes.labels.size())
      throw IoError("prototype and label counts disagree");
    for (const Vector& w : model.prototypes.prototypes)
      if (w.size() != n) throw IoError("prototype dimension mismatch");
    for (const Vector& v : model.frozen_directions)
      if (v.size() != n) throw IoError("frozen direction dimension mismatch");

    const json& c = doc.at("config");
    TrainConfig config;
    config.epochs = c.at("epochs").get<int>();
    config.step_prototype = c.at("step_prototype").get<double>();
    config.step_omega = c.at("step_omega").get<double>();
    config.prototypes_per_class = c.at("prototypes_per_class").get<int>();
    config.seed = c.at("seed").get<std::uint64_t>();
    config.mode = parse_mode(c.at("mode").get<std::string>());
    config.step_decay = c.at("step_decay").get<double>();
    return {std::move(model), config};
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const GmlvqModel& model, const TrainConfig& config,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << model_to_json(model, config);
  if (!out) throw IoError("failed while writing " + path);
}

std::pair<GmlvqModel, TrainConfig> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

}  // namespace irma::lvq
