#include "doctest.h"

#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "irma/data.hpp"
#include "irma/errors.hpp"
#include "irma/linalg.hpp"
#include "irma/lvq.hpp"
#include "irma/rng.hpp"
#include "json.hpp"

using irma::data::Dataset;
using irma::linalg::Matrix;
using irma::linalg::Vector;
using irma::lvq::GmlvqModel;
using irma::lvq::Mode;
using irma::lvq::TrainConfig;

namespace {

Dataset toy(std::vector<std::vector<double>> samples, std::vector<int> labels,
            int classes) {
  Dataset d;
  d.samples = std::move(samples);
  d.labels = std::move(labels);
  for (std::size_t j = 0; j < d.samples.front().size(); ++j)
    d.feature_names.push_back("f" + std::to_string(j + 1));
  for (int c = 1; c <= classes; ++c)
    d.class_names.push_back(std::to_string(c));
  return d;
}

// Two prototypes on the diagonal with Omega = I/sqrt(2): every quantity in
// the update has a short closed form.
GmlvqModel fixture_model() {
  GmlvqModel m;
  m.mode = Mode::gmlvq;
  m.prototypes.prototypes = {{0.5, -0.5}, {-0.5, 0.5}};
  m.prototypes.labels = {1, 2};
  m.omega = Matrix(2, 2);
  m.omega(0, 0) = m.omega(1, 1) = 1.0 / std::sqrt(2.0);
  return m;
}

double trace_of_lambda(const GmlvqModel& m) {
  const Matrix lambda = m.lambda();
  double t = 0.0;
  for (std::size_t i = 0; i < lambda.rows(); ++i) t += lambda(i, i);
  return t;
}

}  // namespace

TEST_CASE("distance is the omega-projected squared norm") {
  GmlvqModel m = fixture_model();
  CHECK(irma::lvq::distance(m, {0.5, -0.5}, {0.5, -0.5}) == 0.0);

  // Identity omega reduces to plain squared Euclidean distance.
  GmlvqModel id = fixture_model();
  id.omega = Matrix::identity(2);
  CHECK(irma::lvq::distance(id, {0.0, 0.0}, {3.0, 4.0}) == 25.0);

  CHECK_THROWS_AS(irma::lvq::distance(m, {0.0, 0.0}, {1.0, 2.0, 3.0}),
                  irma::ShapeMismatch);
}

TEST_CASE("distance agrees with an explicit projection") {
  auto gen = irma::rng::Generator(17);
  const std::size_t n = 5;
  GmlvqModel m;
  m.omega = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m.omega(i, k) = gen.normal();
  Vector w(n), x(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = gen.normal();
    x[k] = gen.normal();
  }
  Vector u(n);
  for (std::size_t k = 0; k < n; ++k) u[k] = x[k] - w[k];
  const Vector z = irma::linalg::matvec(m.omega, u);
  CHECK(irma::lvq::distance(m, w, x) ==
        doctest::Approx(irma::linalg::dot(z, z)).epsilon(1e-12));
}

TEST_CASE("glvq initialization fixes lambda at I/N") {
  const Dataset d = irma::data::gen_two_gaussians(20, 1);
  TrainConfig config;
  config.mode = Mode::glvq;
  const GmlvqModel m = irma::lvq::init_model(d, config);
  const Matrix lambda = m.lambda();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(lambda(i, j) == doctest::Approx(0.25).epsilon(1e-14));
      else
        CHECK(lambda(i, j) == 0.0);
    }
}

TEST_CASE("cost matches hand-computed relative distances") {
  GmlvqModel m = fixture_model();

  // equidistant sample contributes zero
  const Dataset mid = toy({{0.0, 0.0}}, {1}, 2);
  CHECK(irma::lvq::cost(m, mid) == 0.0);

  // a sample sitting on its own prototype contributes -1
  const Dataset on = toy({{0.5, -0.5}}, {1}, 2);
  CHECK(irma::lvq::cost(m, on) == -1.0);

  // three samples with rational distances sum to -8/9
  const Dataset three =
      toy({{1.0, 0.0}, {-1.0, 0.0}, {0.2, 0.6}}, {1, 2, 1}, 2);
  CHECK(irma::lvq::cost(m, three) ==
        doctest::Approx(-8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("cost rejects a sample with zero distance to both sides") {
  GmlvqModel m = fixture_model();
  m.prototypes.prototypes = {{0.0, 0.0}, {0.0, 0.0}};
  const Dataset d = toy({{0.0, 0.0}}, {1}, 2);
  CHECK_THROWS_AS(irma::lvq::cost(m, d), irma::DegenerateDistance);
  CHECK_THROWS_AS(irma::lvq::cost_gradients(m, d), irma::DegenerateDistance);
}

TEST_CASE("one stochastic step reproduces hand-derived values") {
  GmlvqModel m = fixture_model();
  CHECK(irma::lvq::distance(m, m.prototypes.prototypes[0], {1.0, 0.0}) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(irma::lvq::distance(m, m.prototypes.prototypes[1], {1.0, 0.0}) ==
        doctest::Approx(1.25).epsilon(1e-12));

  REQUIRE(irma::lvq::sgd_step(m, {1.0, 0.0}, 1, 0.1, 0.05));

  // correct prototype moves toward the sample, wrong one away
  CHECK(m.prototypes.prototypes[0][0] ==
        doctest::Approx(0.5555555555555556).epsilon(1e-12));
  CHECK(m.prototypes.prototypes[0][1] ==
        doctest::Approx(-0.4444444444444445).epsilon(1e-12));
  CHECK(m.prototypes.prototypes[1][0] ==
        doctest::Approx(-0.5333333333333333).epsilon(1e-12));
  CHECK(m.prototypes.prototypes[1][1] ==
        doctest::Approx(0.5111111111111111).epsilon(1e-12));

  // omega descends and is renormalized to a unit Frobenius norm
  CHECK(m.omega(0, 0) == doctest::Approx(0.7219295436604961).epsilon(1e-12));
  CHECK(m.omega(0, 1) ==
        doctest::Approx(-0.03138824102871722).epsilon(1e-12));
  CHECK(m.omega(1, 0) ==
        doctest::Approx(-0.03138824102871722).epsilon(1e-12));
  CHECK(m.omega(1, 1) == doctest::Approx(0.6905413026317788).epsilon(1e-12));
  CHECK_NEAR(m.omega.frobenius_norm(), 1.0, 1e-12);
  CHECK_NEAR(trace_of_lambda(m), 1.0, 1e-12);
}

TEST_CASE("a degenerate sample is skipped without touching the model") {
  GmlvqModel m = fixture_model();
  m.prototypes.prototypes = {{0.25, 0.25}, {0.25, 0.25}};
  GmlvqModel before = m;
  CHECK_FALSE(irma::lvq::sgd_step(m, {0.25, 0.25}, 1, 0.1, 0.05));
  CHECK(m.prototypes.prototypes == before.prototypes.prototypes);
  CHECK(m.omega.entries() == before.omega.entries());
}

TEST_CASE("glvq steps leave omega untouched") {
  GmlvqModel m = fixture_model();
  m.mode = Mode::glvq;
  const std::vector<double> before = m.omega.entries();
  REQUIRE(irma::lvq::sgd_step(m, {1.0, 0.0}, 1, 0.1, 0.05));
  CHECK(m.omega.entries() == before);
  CHECK(m.prototypes.prototypes[0][0] > 0.5);  // prototypes still move
}

TEST_CASE("the metric constraints hold after every update") {
  auto gen = irma::rng::Generator(88);
  const Dataset d = irma::data::gen_two_gaussians(40, 4);
  TrainConfig config;
  GmlvqModel m = irma::lvq::init_model(d, config);
  for (int step = 0; step < 200; ++step) {
    const std::size_t i = gen.below(d.size());
    irma::lvq::sgd_step(m, d.samples[i], d.labels[i], 0.05, 0.02);
    CHECK_NEAR(trace_of_lambda(m), 1.0, 1e-9);
  }
  // Lambda = Omega^T Omega stays positive semi-definite
  const auto eig = irma::linalg::sym_eig(m.lambda());
  CHECK(eig.eigenvalues.back() >= -1e-10);
}

TEST_CASE("frozen directions stay annihilated through training") {
  const Dataset d = irma::data::gen_two_gaussians(40, 9);
  const std::vector<Vector> frozen = {{1.0, 0.0, 0.0, 0.0},
                                      {0.0, 0.0, 1.0, 0.0}};
  TrainConfig config;
  GmlvqModel m = irma::lvq::init_model(d, config, frozen);
  for (const Vector& v : frozen)
    CHECK(irma::linalg::norm(irma::linalg::matvec(m.omega, v)) <= 1e-12);

  auto gen = irma::rng::Generator(3);
  for (int step = 0; step < 100; ++step) {
    const std::size_t i = gen.below(d.size());
    irma::lvq::sgd_step(m, d.samples[i], d.labels[i], 0.05, 0.02);
  }
  for (const Vector& v : frozen)
    CHECK(irma::linalg::norm(irma::linalg::matvec(m.omega, v)) <= 1e-8);
  CHECK_NEAR(m.omega.frobenius_norm(), 1.0, 1e-9);
}

TEST_CASE("analytic cost gradients match central differences") {
  auto gen = irma::rng::Generator(424242);
  const double h = 1e-5;
  int tested = 0;
  int attempts = 0;
  while (tested < 100) {
    REQUIRE(++attempts < 2000);
    const std::size_t n = 2 + gen.below(4);
    const int ppc = 1 + static_cast<int>(gen.below(2));
    const std::size_t p = 4 + gen.below(7);

    GmlvqModel m;
    m.mode = Mode::gmlvq;
    for (int c = 0; c < 2; ++c)
      for (int q = 0; q < ppc; ++q) {
        Vector w(n);
        for (std::size_t k = 0; k < n; ++k)
          w[k] = (c == 0 ? -1.5 : 1.5) + 0.6 * gen.normal();
        m.prototypes.prototypes.push_back(std::move(w));
        m.prototypes.labels.push_back(c + 1);
      }
    m.omega = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        m.omega(i, k) = (i == k ? 0.8 : 0.0) + 0.25 * gen.normal();

    Dataset d;
    d.class_names = {"1", "2"};
    for (std::size_t i = 0; i < p; ++i) {
      const int label = i < 2 ? static_cast<int>(i) + 1
                              : 1 + static_cast<int>(gen.below(2));
      Vector x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = (label == 1 ? -1.5 : 1.5) + 1.2 * gen.normal();
      d.samples.push_back(std::move(x));
      d.labels.push_back(label);
    }
    for (std::size_t j = 0; j < n; ++j)
      d.feature_names.push_back("f" + std::to_string(j + 1));

    // Keep finite differences on the smooth part of the cost: skip draws
    // where a perturbation of size h could flip a nearest-prototype choice
    // or where d+ + d- is tiny.
    bool smooth = true;
    for (std::size_t i = 0; i < p && smooth; ++i) {
      double best[2] = {1e300, 1e300}, second[2] = {1e300, 1e300};
      for (std::size_t j = 0; j < m.prototypes.size(); ++j) {
        const int side = m.prototypes.labels[j] == d.labels[i] ? 0 : 1;
        const double dist =
            irma::lvq::distance(m, m.prototypes.prototypes[j], d.samples[i]);
        if (dist < best[side]) {
          second[side] = best[side];
          best[side] = dist;
        } else if (dist < second[side]) {
          second[side] = dist;
        }
      }
      if (best[0] + best[1] < 1e-2) smooth = false;
      for (int side = 0; side < 2; ++side)
        if (second[side] - best[side] < 1e-3) smooth = false;
    }
    if (!smooth) continue;
    ++tested;

    const auto g = irma::lvq::cost_gradients(m, d);
    REQUIRE(g.prototype_gradients.size() == m.prototypes.size());
    REQUIRE(g.omega_gradient.rows() == n);

    for (int probe = 0; probe < 3; ++probe) {
      const std::size_t j = gen.below(m.prototypes.size());
      const std::size_t k = gen.below(n);
      GmlvqModel up = m, down = m;
      up.prototypes.prototypes[j][k] += h;
      down.prototypes.prototypes[j][k] -= h;
      const double fd =
          (irma::lvq::cost(up, d) - irma::lvq::cost(down, d)) / (2.0 * h);
      CHECK(g.prototype_gradients[j][k] == doctest::Approx(fd).epsilon(1e-5));
    }
    for (int probe = 0; probe < 3; ++probe) {
      const std::size_t i = gen.below(n);
      const std::size_t k = gen.below(n);
      GmlvqModel up = m, down = m;
      up.omega(i, k) += h;
      down.omega(i, k) -= h;
      const double fd =
          (irma::lvq::cost(up, d) - irma::lvq::cost(down, d)) / (2.0 * h);
      CHECK(g.omega_gradient(i, k) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("initialization places prototypes at class means") {
  const Dataset d =
      toy({{1.0, 2.0}, {3.0, 6.0}, {10.0, -2.0}, {14.0, 0.0}, {0.0, 1.0}},
          {1, 1, 2, 2, 1}, 2);
  TrainConfig config;
  const GmlvqModel m = irma::lvq::init_model(d, config);
  REQUIRE(m.prototypes.size() == 2);
  CHECK(m.prototypes.labels == std::vector<int>{1, 2});
  CHECK(m.prototypes.prototypes[0] ==
        Vector{(1.0 + 3.0 + 0.0) / 3.0, (2.0 + 6.0 + 1.0) / 3.0});
  CHECK(m.prototypes.prototypes[1] == Vector{12.0, -1.0});
}

TEST_CASE("initialization has a unit-trace metric") {
  const Dataset d = irma::data::gen_two_gaussians(10, 2);
  TrainConfig config;
  const GmlvqModel m = irma::lvq::init_model(d, config);
  CHECK(trace_of_lambda(m) == 1.0);  // exact for N = 4: omega = I/2
}

TEST_CASE("extra prototypes per class are jittered apart") {
  const Dataset d = irma::data::gen_two_gaussians(10, 2);
  TrainConfig config;
  config.prototypes_per_class = 3;
  config.seed = 5;
  const GmlvqModel m = irma::lvq::init_model(d, config);
  REQUIRE(m.prototypes.size() == 6);
  CHECK(m.prototypes.labels == std::vector<int>{1, 1, 1, 2, 2, 2});
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      CHECK(m.prototypes.prototypes[a] != m.prototypes.prototypes[b]);
  // the jitter is tiny: prototypes of one class stay near each other
  for (std::size_t a = 0; a < 2; ++a) {
    Vector diff(4);
    for (std::size_t k = 0; k < 4; ++k)
      diff[k] = m.prototypes.prototypes[a][k] -
                m.prototypes.prototypes[a + 1][k];
    CHECK(irma::linalg::norm(diff) < 1e-2);
  }
}

TEST_CASE("initialization deflates omega against frozen directions") {
  const Dataset d = irma::data::gen_two_gaussians(10, 2);
  TrainConfig config;
  const std::vector<Vector> frozen = {{0.0, 1.0, 0.0, 0.0}};
  const GmlvqModel m = irma::lvq::init_model(d, config, frozen);
  CHECK(irma::linalg::norm(irma::linalg::matvec(m.omega, frozen[0])) <=
        1e-12);
  CHECK_NEAR(m.omega.frobenius_norm(), 1.0, 1e-12);
}

TEST_CASE("configuration and input validation") {
  const Dataset d = irma::data::gen_two_gaussians(10, 2);
  TrainConfig config;

  TrainConfig bad = config;
  bad.epochs = 0;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);
  bad = config;
  bad.prototypes_per_class = 0;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);
  bad = config;
  bad.step_prototype = 0.0;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);
  bad = config;
  bad.step_omega = -0.1;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);
  bad = config;
  bad.step_decay = 0.0;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);
  bad = config;
  bad.step_decay = 1.5;
  CHECK_THROWS_AS(irma::lvq::init_model(d, bad), irma::ValidationError);

  Dataset single = d;
  single.class_names = {"1"};
  for (int& l : single.labels) l = 1;
  CHECK_THROWS_AS(irma::lvq::init_model(single, config),
                  irma::ValidationError);

  TrainConfig glvq = config;
  glvq.mode = Mode::glvq;
  CHECK_THROWS_AS(
      irma::lvq::init_model(d, glvq, {{1.0, 0.0, 0.0, 0.0}}),
      irma::ValidationError);

  CHECK_THROWS_AS(irma::lvq::init_model(d, config, {{1.0, 0.0}}),
                  irma::ShapeMismatch);
  CHECK_THROWS_AS(
      irma::lvq::init_model(d, config, {{0.5, 0.5, 0.5, 0.0}}),
      irma::NonUnitDirection);
  const Vector e1 = {1.0, 0.0, 0.0, 0.0};
  const Vector tilted = {std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0};
  CHECK_THROWS_AS(irma::lvq::init_model(d, config, {e1, tilted}),
                  irma::ValidationError);
}

TEST_CASE("training is deterministic and reduces the cost") {
  const Dataset d = irma::data::gen_two_gaussians(60, 11);
  TrainConfig config;
  config.epochs = 10;
  config.seed = 21;

  irma::lvq::TrainTrace trace;
  const GmlvqModel a = irma::lvq::train(d, config, {}, &trace);
  const GmlvqModel b = irma::lvq::train(d, config);
  CHECK(irma::lvq::model_to_json(a, config) ==
        irma::lvq::model_to_json(b, config));

  REQUIRE(trace.epoch_costs.size() == 10);
  CHECK(trace.epoch_costs.back() < trace.initial_cost);
  CHECK(trace.skipped_samples == 0);

  TrainConfig other = config;
  other.seed = 22;
  const GmlvqModel c = irma::lvq::train(d, other);
  CHECK(irma::lvq::model_to_json(a, config) !=
        irma::lvq::model_to_json(c, other));
}

TEST_CASE("training in glvq mode keeps the scaled identity metric") {
  const Dataset d = irma::data::gen_two_gaussians(40, 13);
  TrainConfig config;
  config.mode = Mode::glvq;
  config.epochs = 5;
  const GmlvqModel m = irma::lvq::train(d, config);
  const double scale = 0.5;  // 1/sqrt(4)
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(m.omega(i, k) == (i == k ? scale : 0.0));
}

TEST_CASE("training with a complete frozen basis has no metric left") {
  const Dataset d = irma::data::gen_two_gaussians(10, 3);
  const std::vector<Vector> basis = {{1.0, 0.0, 0.0, 0.0},
                                     {0.0, 1.0, 0.0, 0.0},
                                     {0.0, 0.0, 1.0, 0.0},
                                     {0.0, 0.0, 0.0, 1.0}};
  TrainConfig config;
  CHECK_THROWS_AS(irma::lvq::train(d, config, basis),
                  irma::AllRelevanceRemoved);
}

TEST_CASE("prediction follows the nearest prototype") {
  GmlvqModel m = fixture_model();
  m.prototypes.prototypes = {{-1.0, 0.0}, {1.0, 0.0}};
  CHECK(irma::lvq::predict(m, {-1.0, 0.0}) == 1);
  CHECK(irma::lvq::predict(m, {1.0, 0.0}) == 2);
  CHECK(irma::lvq::predict(m, {0.9, 5.0}) == 2);
  // exact tie goes to the lowest prototype index
  CHECK(irma::lvq::predict(m, {0.0, 0.0}) == 1);

  CHECK_THROWS_AS(irma::lvq::predict(m, {1.0, 2.0, 3.0}),
                  irma::ShapeMismatch);
  GmlvqModel empty;
  empty.omega = Matrix(2, 2);
  CHECK_THROWS_AS(irma::lvq::predict(empty, {0.0, 0.0}),
                  irma::ValidationError);
}

TEST_CASE("prediction agrees with a brute-force scan") {
  const Dataset d = irma::data::gen_two_gaussians(50, 19);
  TrainConfig config;
  config.epochs = 3;
  config.prototypes_per_class = 2;
  const GmlvqModel m = irma::lvq::train(d, config);

  auto gen = irma::rng::Generator(7);
  for (int trial = 0; trial < 50; ++trial) {
    Vector x(4);
    for (double& v : x) v = 4.0 * gen.normal();
    std::size_t best = 0;
    double best_d = irma::lvq::distance(m, m.prototypes.prototypes[0], x);
    for (std::size_t j = 1; j < m.prototypes.size(); ++j) {
      const double dj = irma::lvq::distance(m, m.prototypes.prototypes[j], x);
      if (dj < best_d) {
        best = j;
        best_d = dj;
      }
    }
    CHECK(irma::lvq::predict(m, x) == m.prototypes.labels[best]);
  }
}

TEST_CASE("model serialization round-trips exactly") {
  const Dataset d = irma::data::gen_two_gaussians(30, 23);
  TrainConfig config;
  config.epochs = 4;
  config.seed = 77;
  config.step_decay = 0.9;
  const std::vector<Vector> frozen = {{0.0, 0.0, 0.0, 1.0}};
  const GmlvqModel m = irma::lvq::train(d, config, frozen);

  const std::string text = irma::lvq::model_to_json(m, config);
  const auto [loaded, loaded_config] = irma::lvq::model_from_json(text);
  CHECK(irma::lvq::model_to_json(loaded, loaded_config) == text);
  CHECK(loaded.prototypes.prototypes == m.prototypes.prototypes);
  CHECK(loaded.omega.entries() == m.omega.entries());
  CHECK(loaded.frozen_directions == m.frozen_directions);
  CHECK(loaded.mode == m.mode);
  CHECK(loaded_config.epochs == 4);
  CHECK(loaded_config.seed == 77);
  CHECK(loaded_config.step_decay == 0.9);

  const auto path = std::filesystem::temp_directory_path() /
                    "irma_lvq_test_model.json";
  irma::lvq::save_model(m, config, path.string());
  const auto [from_file, file_config] = irma::lvq::load_model(path.string());
  CHECK(irma::lvq::model_to_json(from_file, file_config) == text);
  std::filesystem::remove(path);
}

TEST_CASE("model deserialization rejects bad input") {
  CHECK_THROWS_AS(irma::lvq::model_from_json("not json at all"),
                  irma::IoError);
  CHECK_THROWS_AS(irma::lvq::load_model("/nonexistent/model.json"),
                  irma::IoError);

  const Dataset d = irma::data::gen_two_gaussians(10, 1);
  TrainConfig config;
  config.epochs = 1;
  const GmlvqModel m = irma::lvq::train(d, config);
  const std::string text = irma::lvq::model_to_json(m, config);

  auto doc = nlohmann::json::parse(text);
  auto mutate = [&](auto&& edit) {
    auto copy = doc;
    edit(copy);
    CHECK_THROWS_AS(irma::lvq::model_from_json(copy.dump()), irma::IoError);
  };
  mutate([](nlohmann::json& j) { j["format"] = "something-else"; });
  mutate([](nlohmann::json& j) { j["version"] = 99; });
  mutate([](nlohmann::json& j) { j["mode"] = "euclidean"; });
  mutate([](nlohmann::json& j) { j.erase("omega"); });
  mutate([](nlohmann::json& j) { j["omega"].erase(0); });
  mutate([](nlohmann::json& j) { j["omega"][0].erase(0); });
  mutate([](nlohmann::json& j) { j["prototypes"][0].erase(0); });
  mutate([](nlohmann::json& j) { j["prototype_labels"].erase(0); });
}
