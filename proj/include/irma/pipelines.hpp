#pragma once

#include <cstddef>
#include <vector>

#include "irma/data.hpp"
#include "irma/eval.hpp"
#include "irma/linalg.hpp"
#include "irma/lvq.hpp"

namespace irma::pipelines {

// The three classifiers compared per repeat. `base` supplies epochs, step
// sizes, prototype count, and the repeat seed; each pipeline forces the
// metric mode it needs.

// GLVQ on the data as given.
eval::RepeatOutcome pipeline_original(const data::Dataset& train,
                                      const data::Dataset& test,
                                      const lvq::TrainConfig& base);

// GMLVQ, then GLVQ retrained on the projection onto the leading eigenvectors
// covering `variance_mass` of the eigenvalue sum.
eval::RepeatOutcome pipeline_gmlvq_space(const data::Dataset& train,
                                         const data::Dataset& test,
                                         const lvq::TrainConfig& base,
                                         double variance_mass = 0.99);

// How the subspace dimension is chosen inside pipeline_irma_space: the
// subspace grows one direction per iteration while the training accuracy of
// a GLVQ retrained in it keeps improving (up to `patience` stale steps), and
// the smallest dimension within `tolerance` of the best accuracy wins.
struct ForwardSelection {
  double tolerance = 0.005;
  int patience = 3;
};

// One direction removed per iteration; GLVQ retrained in the selected
// prefix of the assembled subspace.
eval::RepeatOutcome pipeline_irma_space(const data::Dataset& train,
                                        const data::Dataset& test,
                                        const lvq::TrainConfig& base,
                                        const ForwardSelection& selection = {});

// GLVQ trained and scored on the span of `directions`. With the standard
// basis this is exactly pipeline_original.
eval::RepeatOutcome glvq_in_subspace(const data::Dataset& train,
                                     const data::Dataset& test,
                                     const std::vector<linalg::Vector>& directions,
                                     const lvq::TrainConfig& base);

// Smallest k with eigenvalue[0..k) summing to at least mass * total.
std::size_t retained_leading_count(const std::vector<double>& eigenvalues,
                                   double mass);

}  // namespace irma::pipelines
