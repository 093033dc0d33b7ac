#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "irma/data.hpp"
#include "irma/eval.hpp"
#include "irma/linalg.hpp"

namespace irma::report {

// CSV emitters below share one convention: comma separators, one header
// line, '\n' endings, shortest-round-trip float formatting. Every emitter
// has a parser that reconstructs its input exactly, so parse + re-emit is
// byte-identical. Text fields must not contain commas or line breaks.

// --- relevance profiles (diagonal of Lambda per iteration) ---

struct RelevanceProfile {
  int iteration = 0;
  linalg::Vector values;
};

struct RelevanceTable {
  std::vector<RelevanceProfile> profiles;  // all of dimension feature_names.size()
  std::vector<std::string> feature_names;
};

// Columns: iteration, feature_index (1-based), feature_name, relevance.
void emit_relevance_csv(const RelevanceTable& table, const std::string& path);
RelevanceTable parse_relevance_csv(const std::string& path);

// --- per-iteration and summary accuracy tables ---

struct IterationBac {
  int iteration = 0;
  double bac = 0.0;
};

// Columns: iteration, bac.
void emit_bac_table(const std::vector<IterationBac>& rows,
                    const std::string& path);
std::vector<IterationBac> parse_iteration_bac_table(const std::string& path);

struct SummaryRow {
  std::string dataset;
  int prototypes_per_class = 1;
  std::string pipeline;
  double mean_bac = 0.0;
  double std_bac = 0.0;
  std::size_t dim = 0;
};

// Columns: dataset, prototypes, pipeline, mean_bac, std_bac, dim.
void emit_bac_table(const std::vector<SummaryRow>& rows,
                    const std::string& path);
std::vector<SummaryRow> parse_summary_table(const std::string& path);

// Columns: pipeline, prototypes, repeat, bac, dim; one row per repeat.
void emit_repeats_csv(const eval::EvalReport& report, const std::string& path);
eval::EvalReport parse_repeats_csv(const std::string& path);

// --- scatter figures ---

struct ScatterSpec {
  std::string title;
  std::string x_label = "component 1";
  std::string y_label = "component 2";
};

// Standalone SVG scatter of a 2-D labeled dataset: axes with tick labels
// spanning the data range, a legend, and one marker element per point with
// a distinct glyph/color pair per class (at most 12 classes).
void emit_scatter_svg(const data::Dataset& points, const ScatterSpec& spec,
                      const std::string& path);

}  // namespace irma::report
