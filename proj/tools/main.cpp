// Command-line driver: dataset generation, model training, relevance matrix
// analysis, and the repeated-validation pipeline comparison.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <tuple>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "irma/analysis.hpp"
#include "irma/data.hpp"
#include "irma/errors.hpp"
#include "irma/eval.hpp"
#include "irma/format.hpp"
#include "irma/lvq.hpp"
#include "irma/pipelines.hpp"
#include "irma/report.hpp"
#include "irma/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// --- shared option blocks ---

struct InputOpts {
  std::vector<std::string> data_files;
  std::size_t synthetic = 0;  // samples per class when nonzero
  std::string format = "auto";
  bool no_standardize = false;
};

struct TrainOpts {
  std::string mode = "gmlvq";
  int prototypes = 1;
  int epochs = 30;
  double step_prototype = 0.1;
  double step_omega = 0.01;
  double decay = 1.0;
};

void add_input_options(CLI::App* cmd, InputOpts& in) {
  auto* group = cmd->add_option_group("input");
  auto* data = group->add_option("--data", in.data_files,
                                 "input CSV file(s); several files are merged");
  group->add_option("--synthetic", in.synthetic,
                    "generate the two-Gaussian benchmark with this many "
                    "samples per class")
      ->check(CLI::PositiveNumber)
      ->excludes(data);
  group->require_option(1);
  cmd->add_option("--format", in.format,
                  "CSV layout of --data files")
      ->check(CLI::IsMember({"auto", "canonical", "wdbc", "segmentation"}));
  cmd->add_flag("--no-standardize", in.no_standardize,
                "skip the per-feature z-score transform");
}

void add_train_options(CLI::App* cmd, TrainOpts& tr, bool with_mode = true) {
  if (with_mode)
    cmd->add_option("--mode", tr.mode, "classifier variant")
        ->check(CLI::IsMember({"glvq", "gmlvq"}));
  cmd->add_option("--ppc", tr.prototypes, "prototypes per class")
      ->check(CLI::Range(1, 16));
  cmd->add_option("--epochs", tr.epochs, "training epochs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step-w", tr.step_prototype, "prototype step size");
  cmd->add_option("--step-omega", tr.step_omega, "relevance step size");
  cmd->add_option("--decay", tr.decay, "per-epoch step decay in (0,1]");
}

irma::data::CsvFormat parse_format(const std::string& name) {
  if (name == "canonical") return irma::data::CsvFormat::canonical;
  if (name == "wdbc") return irma::data::CsvFormat::wdbc;
  if (name == "segmentation") return irma::data::CsvFormat::segmentation;
  return irma::data::CsvFormat::auto_detect;
}

irma::lvq::TrainConfig make_train_config(const TrainOpts& tr,
                                         std::uint64_t seed) {
  irma::lvq::TrainConfig c;
  c.epochs = tr.epochs;
  c.step_prototype = tr.step_prototype;
  c.step_omega = tr.step_omega;
  c.prototypes_per_class = tr.prototypes;
  c.seed = seed;
  c.mode = tr.mode == "glvq" ? irma::lvq::Mode::glvq : irma::lvq::Mode::gmlvq;
  c.step_decay = tr.decay;
  return c;
}

// `defer` postpones standardization so the caller can fit the transform on a
// training split instead of the full data.
irma::data::Dataset load_input(const InputOpts& in, std::uint64_t seed,
                               bool defer = false) {
  irma::data::Dataset d;
  if (in.synthetic > 0) {
    d = irma::data::gen_two_gaussians(in.synthetic, seed);
  } else {
    std::vector<std::string> warnings;
    d = irma::data::load_csv(in.data_files, parse_format(in.format),
                             &warnings);
    for (const std::string& w : warnings) std::cerr << "note: " << w << '\n';
  }
  if (!in.no_standardize && !defer)
    d = irma::data::apply_zscore(irma::data::fit_zscore(d), d);
  return d;
}

// --- output helpers ---

fs::path ensure_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw irma::IoError("cannot create directory " + out);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw irma::IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw irma::IoError("failed while writing " + path.string());
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

ordered_json train_config_json(const irma::lvq::TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"step_prototype", c.step_prototype},
          {"step_omega", c.step_omega},
          {"prototypes_per_class", c.prototypes_per_class},
          {"seed", c.seed},
          {"mode", c.mode == irma::lvq::Mode::glvq ? "glvq" : "gmlvq"},
          {"step_decay", c.step_decay}};
}

const char* stop_reason_name(irma::analysis::StopReason reason) {
  switch (reason) {
    case irma::analysis::StopReason::below_chance: return "below_chance";
    case irma::analysis::StopReason::iteration_cap: return "iteration_cap";
    default: return "exhausted";
  }
}

std::string subspace_text(const std::vector<irma::linalg::Vector>& rows) {
  std::string text;
  for (const auto& v : rows) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) text += ' ';
      text += irma::format_double(v[k]);
    }
    text += '\n';
  }
  return text;
}

// --- commands ---

struct GenOpts {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out = "dataset.csv";
};

void run_gen(const GenOpts& opt) {
  const auto d = irma::data::gen_two_gaussians(opt.n, opt.seed);
  irma::data::save_csv(d, opt.out);
  std::cout << "wrote " << d.size() << " samples to " << opt.out << '\n';
}

struct TrainCmdOpts {
  InputOpts input;
  TrainOpts train;
  std::uint64_t seed = 0;
  std::string out = "out";
};

void run_train(const TrainCmdOpts& opt) {
  const auto d = load_input(opt.input, opt.seed);
  const auto config = make_train_config(opt.train, opt.seed);

  irma::lvq::TrainTrace trace;
  const auto model = irma::lvq::train(d, config, {}, &trace);
  const double bac = irma::eval::balanced_accuracy(model, d);

  const fs::path dir = ensure_dir(opt.out);
  irma::lvq::save_model(model, config, (dir / "model.json").string());
  irma::report::emit_relevance_csv(
      {{{0, irma::analysis::relevance_profile(model)}}, d.feature_names},
      (dir / "relevance.csv").string());

  std::cout << "trained " << opt.train.mode << " on " << d.size()
            << " samples (" << d.dim() << " features, " << d.num_classes()
            << " classes)\n"
            << "cost " << irma::format_double(trace.initial_cost) << " -> "
            << irma::format_double(trace.epoch_costs.empty()
                                       ? trace.initial_cost
                                       : trace.epoch_costs.back())
            << ", training bac " << irma::format_double(bac) << '\n'
            << "model written to " << (dir / "model.json").string() << '\n';
}

struct IrmaCmdOpts {
  InputOpts input;
  TrainOpts train;
  int k = 1;
  int max_iter = 100;
  double epsilon = 0.05;
  double split = 0.5;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool deterministic = false;
  bool zscore_train = false;
};

void run_irma(const IrmaCmdOpts& opt) {
  using irma::analysis::IrmaResult;

  const auto full = load_input(opt.input, opt.seed, opt.zscore_train);

  irma::data::Dataset train_set = full, holdout;
  const bool with_holdout = opt.split > 0.0 && opt.split < 1.0;
  if (with_holdout) {
    irma::data::SplitSpec spec;
    spec.train_fraction = opt.split;
    spec.seed = opt.seed;
    std::tie(train_set, holdout) = irma::data::stratified_split(full, spec);
  }
  irma::data::Dataset plot_data = full;
  if (opt.zscore_train && !opt.input.no_standardize) {
    const auto t = irma::data::fit_zscore(train_set);
    train_set = irma::data::apply_zscore(t, train_set);
    if (with_holdout) holdout = irma::data::apply_zscore(t, holdout);
    plot_data = irma::data::apply_zscore(t, full);
  }

  irma::analysis::IrmaConfig config;
  config.vectors_per_iteration = opt.k;
  config.max_iterations = opt.max_iter;
  config.stop_margin = opt.epsilon;
  config.train = make_train_config(opt.train, opt.seed);
  config.train.mode = irma::lvq::Mode::gmlvq;

  const IrmaResult result =
      irma::analysis::run(train_set, config, with_holdout ? &holdout : nullptr);

  const fs::path dir = ensure_dir(opt.out);

  // per-iteration artifacts
  irma::report::RelevanceTable relevance;
  relevance.feature_names = full.feature_names;
  std::vector<irma::report::IterationBac> bac_rows;
  ordered_json iteration_json = ordered_json::array();
  for (std::size_t j = 0; j < result.records.size(); ++j) {
    const auto& rec = result.records[j];
    const std::string model_file =
        "model_iter_" + std::to_string(j) + ".json";
    irma::lvq::save_model(rec.model, config.train,
                          (dir / model_file).string());
    relevance.profiles.push_back(
        {static_cast<int>(j), irma::analysis::relevance_profile(rec.model)});
    bac_rows.push_back({static_cast<int>(j), rec.bac});

    if (full.dim() >= 2) {
      const auto eig = irma::linalg::sym_eig(rec.model.lambda());
      const auto projected = irma::analysis::project(
          plot_data, {eig.eigenvector(0), eig.eigenvector(1)});
      irma::report::ScatterSpec spec;
      spec.title = "iteration " + std::to_string(j) + " projection";
      spec.x_label = "leading direction 1";
      spec.y_label = "leading direction 2";
      irma::report::emit_scatter_svg(
          projected, spec,
          (dir / ("scatter_iter_" + std::to_string(j) + ".svg")).string());
    }

    iteration_json.push_back({{"index", j},
                              {"bac", rec.bac},
                              {"model_file", model_file},
                              {"eigenvalues", rec.eigenvalues},
                              {"directions", rec.directions}});
  }
  irma::report::emit_relevance_csv(relevance,
                                   (dir / "relevance.csv").string());
  irma::report::emit_bac_table(bac_rows,
                               (dir / "bac_iterations.csv").string());
  write_text(dir / "subspace.txt", subspace_text(result.subspace.directions));

  ordered_json doc;
  doc["format"] = "irma-result";
  doc["version"] = 1;
  if (!opt.deterministic) doc["generated_at"] = timestamp();
  doc["config"] = {{"vectors_per_iteration", config.vectors_per_iteration},
                   {"max_iterations", config.max_iterations},
                   {"stop_margin", config.stop_margin},
                   {"split", opt.split},
                   {"standardize", !opt.input.no_standardize},
                   {"train", train_config_json(config.train)}};
  doc["chance_level"] = result.chance_level;
  doc["stop_reason"] = stop_reason_name(result.stop_reason);
  doc["iterations"] = iteration_json;
  doc["subspace"] = {{"dim", result.subspace.dim()},
                     {"source_iteration", result.subspace.source_iteration},
                     {"directions", result.subspace.directions}};
  write_text(dir / "irma_result.json", doc.dump(2) + "\n");

  std::cout << result.records.size() << " iterations, stop reason "
            << stop_reason_name(result.stop_reason) << ", subspace dim "
            << result.subspace.dim() << '\n';
  for (const auto& row : bac_rows)
    std::cout << "  iteration " << row.iteration << ": bac "
              << irma::format_double(row.bac) << '\n';
  std::cout << "results written to " << dir.string() << '\n';
}

struct Table1Opts {
  InputOpts input;
  TrainOpts train;  // mode ignored; pipelines pick their own
  std::string name;
  int repeats = 30;
  double split = 0.5;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool deterministic = false;
  bool zscore_train = false;
};

void run_table1(const Table1Opts& opt) {
  const auto full = load_input(opt.input, opt.seed, opt.zscore_train);
  const bool refit = opt.zscore_train && !opt.input.no_standardize;
  std::string dataset_name = opt.name;
  if (dataset_name.empty())
    dataset_name = opt.input.synthetic > 0
                       ? "synthetic"
                       : fs::path(opt.input.data_files.front()).stem().string();

  irma::data::SplitSpec split_spec;
  split_spec.train_fraction = opt.split;
  split_spec.seed = opt.seed;

  const fs::path dir = ensure_dir(opt.out);
  const char* const pipeline_names[] = {"original", "gmlvq_space",
                                        "irma_space"};
  std::vector<irma::report::SummaryRow> summary;
  ordered_json cells = ordered_json::array();

  for (int ppc = 1; ppc <= 3; ++ppc) {
    TrainOpts tr = opt.train;
    tr.prototypes = ppc;
    for (const char* pipeline : pipeline_names) {
      const std::string pname = pipeline;
      const auto runner = [&tr, &pname, refit](
                              const irma::data::Dataset& train_in,
                              const irma::data::Dataset& test_in,
                              std::uint64_t seed) {
        irma::data::Dataset train_set = train_in, test_set = test_in;
        if (refit) {
          const auto t = irma::data::fit_zscore(train_set);
          train_set = irma::data::apply_zscore(t, train_set);
          test_set = irma::data::apply_zscore(t, test_set);
        }
        const auto base = make_train_config(tr, seed);
        if (pname == "original")
          return irma::pipelines::pipeline_original(train_set, test_set, base);
        if (pname == "gmlvq_space")
          return irma::pipelines::pipeline_gmlvq_space(train_set, test_set,
                                                       base);
        return irma::pipelines::pipeline_irma_space(train_set, test_set, base);
      };

      auto report = irma::eval::repeated_validation(full, runner, opt.repeats,
                                                    split_spec, opt.jobs);
      report.pipeline = pname;
      report.prototypes_per_class = ppc;
      irma::report::emit_repeats_csv(
          report, (dir / ("repeats_" + pname + "_" + std::to_string(ppc) +
                          "p.csv"))
                      .string());

      summary.push_back({dataset_name, ppc, pname, report.mean_bac(),
                         report.std_bac(), report.dim_mode()});
      cells.push_back({{"dataset", dataset_name},
                       {"prototypes", ppc},
                       {"pipeline", pname},
                       {"mean_bac", report.mean_bac()},
                       {"std_bac", report.std_bac()},
                       {"dim", report.dim_mode()}});
      std::cout << dataset_name << " " << pname << " " << ppc
                << "p: mean bac " << irma::format_double(report.mean_bac())
                << " (std " << irma::format_double(report.std_bac())
                << "), dim " << report.dim_mode() << '\n';
    }
  }

  irma::report::emit_bac_table(summary, (dir / "summary.csv").string());
  ordered_json doc;
  doc["format"] = "irma-table1";
  doc["version"] = 1;
  if (!opt.deterministic) doc["generated_at"] = timestamp();
  doc["repeats"] = opt.repeats;
  doc["split"] = opt.split;
  doc["seed"] = opt.seed;
  doc["cells"] = cells;
  write_text(dir / "summary.json", doc.dump(2) + "\n");
  std::cout << "summary written to " << (dir / "summary.csv").string() << '\n';
}

struct ProjectOpts {
  InputOpts input;
  std::string subspace_file;
  std::string model_file;
  int top = 2;
  std::uint64_t seed = 0;
  std::string out = "projected.csv";
};

std::vector<irma::linalg::Vector> read_subspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw irma::IoError("cannot open " + path);
  std::vector<irma::linalg::Vector> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    irma::linalg::Vector v;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      std::size_t end = line.find(' ', pos);
      if (end == std::string::npos) end = line.size();
      try {
        v.push_back(std::stod(line.substr(pos, end - pos)));
      } catch (const std::exception&) {
        throw irma::ParseError("bad number in subspace file", lineno, pos + 1);
      }
      pos = end;
    }
    rows.push_back(std::move(v));
  }
  return rows;
}

void run_project(const ProjectOpts& opt) {
  const auto d = load_input(opt.input, opt.seed);

  std::vector<irma::linalg::Vector> directions;
  if (!opt.subspace_file.empty()) {
    directions = read_subspace(opt.subspace_file);
  } else {
    const auto [model, config] = irma::lvq::load_model(opt.model_file);
    const auto eig = irma::linalg::sym_eig(model.lambda());
    const int top = std::min<int>(opt.top, static_cast<int>(model.dim()));
    for (int j = 0; j < top; ++j) directions.push_back(eig.eigenvector(j));
  }

  const auto projected = irma::analysis::project(d, directions);
  irma::data::save_csv(projected, opt.out);
  std::cout << "projected " << projected.size() << " samples onto "
            << directions.size() << " directions -> " << opt.out << '\n';
}

struct RelevanceOpts {
  std::string model_file;
  std::vector<std::string> data_files;  // optional, for feature names
  std::string format = "auto";
  int iteration = 0;
  std::string out = "relevance.csv";
};

void run_relevance(const RelevanceOpts& opt) {
  const auto [model, config] = irma::lvq::load_model(opt.model_file);
  irma::report::RelevanceTable table;
  table.profiles.push_back(
      {opt.iteration, irma::analysis::relevance_profile(model)});
  if (!opt.data_files.empty()) {
    const auto d = irma::data::load_csv(opt.data_files,
                                        parse_format(opt.format), nullptr);
    if (d.dim() != model.dim())
      throw irma::ShapeMismatch(
          "--data features do not match the model dimension");
    table.feature_names = d.feature_names;
  } else {
    for (std::size_t k = 1; k <= model.dim(); ++k)
      table.feature_names.push_back("feature_" + std::to_string(k));
  }
  irma::report::emit_relevance_csv(table, opt.out);
  std::cout << "relevance profile written to " << opt.out << '\n';
}

struct PlotOpts {
  std::string data_file;
  std::string title;
  std::string x_label = "component 1";
  std::string y_label = "component 2";
  std::string out = "scatter.svg";
};

void run_plot(const PlotOpts& opt) {
  const auto d =
      irma::data::load_csv(opt.data_file, irma::data::CsvFormat::auto_detect,
                           nullptr);
  irma::report::ScatterSpec spec;
  spec.title = opt.title;
  spec.x_label = opt.x_label;
  spec.y_label = opt.y_label;
  irma::report::emit_scatter_svg(d, spec, opt.out);
  std::cout << "scatter written to " << opt.out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prototype classifiers with iterated relevance matrix analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file");

  GenOpts gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate the synthetic benchmark");
  cmd_gen->add_option("--n", gen.n, "samples per class")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_gen->add_option("--seed", gen.seed, "root seed")->envname("IRMA_SEED");
  cmd_gen->add_option("--out", gen.out, "output CSV path");
  cmd_gen->callback([&] { run_gen(gen); });

  TrainCmdOpts train;
  auto* cmd_train = app.add_subcommand("train", "train a single model");
  add_input_options(cmd_train, train.input);
  add_train_options(cmd_train, train.train);
  cmd_train->add_option("--seed", train.seed, "root seed")
      ->envname("IRMA_SEED");
  cmd_train->add_option("--out", train.out, "output directory");
  cmd_train->callback([&] { run_train(train); });

  IrmaCmdOpts irma_cmd;
  auto* cmd_irma =
      app.add_subcommand("irma", "iterated relevance matrix analysis");
  add_input_options(cmd_irma, irma_cmd.input);
  add_train_options(cmd_irma, irma_cmd.train, /*with_mode=*/false);
  cmd_irma->add_option("--k", irma_cmd.k, "directions removed per iteration")
      ->check(CLI::PositiveNumber);
  cmd_irma->add_option("--max-iter", irma_cmd.max_iter,
                       "highest restricted iteration index")
      ->check(CLI::NonNegativeNumber);
  cmd_irma->add_option("--epsilon", irma_cmd.epsilon,
                       "stop once bac <= 1/C + epsilon");
  cmd_irma->add_option("--split", irma_cmd.split,
                       "train fraction held out of the stopping-rule "
                       "evaluation; 0 evaluates on the training data")
      ->check(CLI::Range(0.0, 0.95));
  cmd_irma->add_option("--seed", irma_cmd.seed, "root seed")
      ->envname("IRMA_SEED");
  cmd_irma->add_option("--out", irma_cmd.out, "output directory");
  cmd_irma->add_flag("--deterministic", irma_cmd.deterministic,
                     "omit the timestamp so artifacts are byte-stable");
  cmd_irma->add_flag("--zscore-train", irma_cmd.zscore_train,
                     "fit the z-score on the training split only");
  cmd_irma->callback([&] { run_irma(irma_cmd); });

  Table1Opts table1;
  auto* cmd_table1 = app.add_subcommand(
      "table1", "three-pipeline comparison over repeated splits");
  add_input_options(cmd_table1, table1.input);
  add_train_options(cmd_table1, table1.train, /*with_mode=*/false);
  cmd_table1->add_option("--name", table1.name, "dataset label in the summary");
  cmd_table1->add_option("--repeats", table1.repeats, "validation repeats")
      ->check(CLI::PositiveNumber);
  cmd_table1->add_option("--split", table1.split, "train fraction")
      ->check(CLI::Range(0.05, 0.95));
  cmd_table1->add_option("--jobs", table1.jobs, "concurrent repeats")
      ->check(CLI::PositiveNumber);
  cmd_table1->add_option("--seed", table1.seed, "root seed")
      ->envname("IRMA_SEED");
  cmd_table1->add_option("--out", table1.out, "output directory");
  cmd_table1->add_flag("--deterministic", table1.deterministic,
                       "omit the timestamp so artifacts are byte-stable");
  cmd_table1->add_flag("--zscore-train", table1.zscore_train,
                       "fit the z-score on each training split only");
  cmd_table1->callback([&] { run_table1(table1); });

  ProjectOpts project;
  auto* cmd_project =
      app.add_subcommand("project", "project data onto stored directions");
  add_input_options(cmd_project, project.input);
  auto* basis = cmd_project->add_option_group("basis");
  auto* sub_opt = basis->add_option("--subspace", project.subspace_file,
                                    "plain-text basis (rows = vectors)");
  basis->add_option("--model", project.model_file,
                    "model file; uses the leading eigenvectors of Lambda")
      ->excludes(sub_opt);
  basis->require_option(1);
  cmd_project->add_option("--top", project.top,
                          "eigenvector count with --model")
      ->check(CLI::PositiveNumber);
  cmd_project->add_option("--seed", project.seed, "root seed")
      ->envname("IRMA_SEED");
  cmd_project->add_option("--out", project.out, "output CSV path");
  cmd_project->callback([&] { run_project(project); });

  RelevanceOpts relevance;
  auto* cmd_relevance =
      app.add_subcommand("relevance", "export a model's relevance profile");
  cmd_relevance->add_option("--model", relevance.model_file, "model file")
      ->required();
  cmd_relevance->add_option("--data", relevance.data_files,
                            "dataset supplying feature names");
  cmd_relevance->add_option("--format", relevance.format, "CSV layout")
      ->check(CLI::IsMember({"auto", "canonical", "wdbc", "segmentation"}));
  cmd_relevance->add_option("--iteration", relevance.iteration,
                            "iteration tag for the CSV");
  cmd_relevance->add_option("--out", relevance.out, "output CSV path");
  cmd_relevance->callback([&] { run_relevance(relevance); });

  PlotOpts plot;
  auto* cmd_plot = app.add_subcommand("plot", "scatter a 2-D labeled CSV");
  cmd_plot->add_option("--data", plot.data_file, "canonical 2-feature CSV")
      ->required();
  cmd_plot->add_option("--title", plot.title, "figure title");
  cmd_plot->add_option("--x-label", plot.x_label, "x axis label");
  cmd_plot->add_option("--y-label", plot.y_label, "y axis label");
  cmd_plot->add_option("--out", plot.out, "output SVG path");
  cmd_plot->callback([&] { run_plot(plot); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const irma::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const irma::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const irma::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const irma::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
