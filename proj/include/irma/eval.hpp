#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "irma/data.hpp"
#include "irma/lvq.hpp"

namespace irma::eval {

// Square count table; entry (t, p) is the number of samples of true class t
// predicted as class p. Classes are 1-based, as in Dataset.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int classes)
      : classes_(classes), counts_(static_cast<std::size_t>(classes) * classes, 0) {}

  int classes() const { return classes_; }
  std::size_t& at(int true_label, int predicted) {
    return counts_[index(true_label, predicted)];
  }
  std::size_t at(int true_label, int predicted) const {
    return counts_[index(true_label, predicted)];
  }
  std::size_t row_total(int true_label) const;

 private:
  std::size_t index(int t, int p) const {
    return static_cast<std::size_t>(t - 1) * classes_ + (p - 1);
  }

  int classes_;
  std::vector<std::size_t> counts_;
};

ConfusionMatrix confusion(const lvq::GmlvqModel& model,
                          const data::Dataset& d);

// Macro-averaged recall: the mean over classes of the per-class accuracy.
// Throws EmptyTestClass when some class contributes no samples.
double balanced_accuracy(const ConfusionMatrix& cm);
double balanced_accuracy(const lvq::GmlvqModel& model, const data::Dataset& d);

// One train/evaluate cycle on a given split: the test BAC plus the
// dimension the final classifier operated in.
struct RepeatOutcome {
  double bac = 0.0;
  std::size_t dim = 0;
};

using PipelineRunner = std::function<RepeatOutcome(
    const data::Dataset& train, const data::Dataset& test,
    std::uint64_t seed)>;

struct EvalReport {
  std::string pipeline;
  int prototypes_per_class = 1;
  std::vector<double> bacs;        // one entry per repeat
  std::vector<std::size_t> dims;   // classifier dimension per repeat

  double mean_bac() const;
  double std_bac() const;        // sample standard deviation (n - 1)
  std::size_t dim_mode() const;  // most frequent dim; ties go to the smaller
};

// Splits `full` `repeats` times with per-repeat seeds derived from
// spec.seed, hands every train/test pair to `runner`, and collects the
// outcomes in repeat order. `jobs` bounds how many repeats run concurrently;
// the report is identical for any job count.
EvalReport repeated_validation(const data::Dataset& full,
                               const PipelineRunner& runner, int repeats,
                               const data::SplitSpec& spec, int jobs = 1);

}  // namespace irma::eval
