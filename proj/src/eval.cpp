#include "irma/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "irma/errors.hpp"
#include "irma/rng.hpp"

namespace irma::eval {

std::size_t ConfusionMatrix::row_total(int true_label) const {
  std::size_t total = 0;
  for (int p = 1; p <= classes_; ++p) total += at(true_label, p);
  return total;
}

ConfusionMatrix confusion(const lvq::GmlvqModel& model,
                          const data::Dataset& d) {
  const int classes = std::max(model.num_classes(), d.num_classes());
  ConfusionMatrix cm(classes);
  for (std::size_t i = 0; i < d.size(); ++i)
    ++cm.at(d.labels[i], lvq::predict(model, d.samples[i]));
  return cm;
}

double balanced_accuracy(const ConfusionMatrix& cm) {
  double sum = 0.0;
  for (int c = 1; c <= cm.classes(); ++c) {
    const std::size_t total = cm.row_total(c);
    if (total == 0)
      throw EmptyTestClass("class " + std::to_string(c) +
                           " has no evaluation samples");
    sum += static_cast<double>(cm.at(c, c)) / static_cast<double>(total);
  }
  return sum / cm.classes();
}

double balanced_accuracy(const lvq::GmlvqModel& model,
                         const data::Dataset& d) {
  return balanced_accuracy(confusion(model, d));
}

double EvalReport::mean_bac() const {
  double sum = 0.0;
  for (double b : bacs) sum += b;
  return bacs.empty() ? 0.0 : sum / bacs.size();
}

double EvalReport::std_bac() const {
  if (bacs.size() < 2) return 0.0;
  const double mean = mean_bac();
  double ss = 0.0;
  for (double b : bacs) ss += (b - mean) * (b - mean);
  return std::sqrt(ss / (bacs.size() - 1));
}

std::size_t EvalReport::dim_mode() const {
  std::map<std::size_t, std::size_t> freq;
  for (std::size_t d : dims) ++freq[d];
  std::size_t best = 0, best_count = 0;
  for (const auto& [dim, count] : freq)
    if (count > best_count) {
      best = dim;
      best_count = count;
    }
  return best;
}

EvalReport repeated_validation(const data::Dataset& full,
                               const PipelineRunner& runner, int repeats,
                               const data::SplitSpec& spec, int jobs) {
  if (repeats < 1) throw ValidationError("need at least one repeat");
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, repeats);

  EvalReport report;
  report.bacs.assign(repeats, 0.0);
  report.dims.assign(repeats, 0);
  std::vector<std::exception_ptr> errors(repeats);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= repeats) return;
      try {
        data::SplitSpec s = spec;
        s.seed = rng::derive_seed(spec.seed, "repeat",
                                  static_cast<std::uint64_t>(r));
        auto [train, test] = data::stratified_split(full, s);
        const RepeatOutcome out = runner(train, test, s.seed);
        report.bacs[r] = out.bac;
        report.dims[r] = out.dim;
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return report;
}

}  // namespace irma::eval
