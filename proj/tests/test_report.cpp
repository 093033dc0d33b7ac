#include "doctest.h"

#include "test_support.hpp"

#include <string>
#include <vector>

#include "irma/data.hpp"
#include "irma/errors.hpp"
#include "irma/eval.hpp"
#include "irma/report.hpp"

using irma::data::Dataset;
using irma::report::IterationBac;
using irma::report::RelevanceProfile;
using irma::report::RelevanceTable;
using irma::report::ScatterSpec;
using irma::report::SummaryRow;

namespace {

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Minimal well-formedness scan: every tag closes, nesting matches, no stray
// angle brackets. Attribute values in our output never contain '<' or '>'.
bool well_formed_xml(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '>') return false;
    if (s[i] != '<') {
      ++i;
      continue;
    }
    const std::size_t close = s.find('>', i);
    if (close == std::string::npos) return false;
    std::string tag = s.substr(i + 1, close - i - 1);
    if (tag.empty()) return false;
    if (tag.front() == '?') {
      if (tag.back() != '?') return false;
    } else if (tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else if (tag.back() == '/') {
      // self-closing
    } else {
      stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
    }
    i = close + 1;
  }
  return stack.empty();
}

Dataset scatter_points(std::vector<std::vector<double>> samples,
                       std::vector<int> labels,
                       std::vector<std::string> classes) {
  Dataset d;
  d.samples = std::move(samples);
  d.labels = std::move(labels);
  d.class_names = std::move(classes);
  d.feature_names = {"component_1", "component_2"};
  return d;
}

}  // namespace

TEST_CASE("relevance table emits one row per iteration and feature") {
  TempDir tmp;
  RelevanceTable table;
  table.feature_names = {"a", "b", "c"};
  table.profiles = {{0, {0.0, 1.0, 0.0}}};
  const std::string path = (tmp.path / "relevance.csv").string();
  irma::report::emit_relevance_csv(table, path);
  CHECK(slurp(path) ==
        "iteration,feature_index,feature_name,relevance\n"
        "0,1,a,0\n"
        "0,2,b,1\n"
        "0,3,c,0\n");
}

TEST_CASE("relevance table round-trips byte for byte") {
  TempDir tmp;
  RelevanceTable table;
  table.feature_names = {"radius", "texture"};
  table.profiles = {{0, {0.125, 0.875}},
                    {1, {1e-8, 0.99999999}},
                    {5, {-0.25, 1.25}}};
  const std::string first = (tmp.path / "a.csv").string();
  const std::string second = (tmp.path / "b.csv").string();
  irma::report::emit_relevance_csv(table, first);

  const RelevanceTable parsed = irma::report::parse_relevance_csv(first);
  CHECK(parsed.feature_names == table.feature_names);
  REQUIRE(parsed.profiles.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(parsed.profiles[j].iteration == table.profiles[j].iteration);
    CHECK(parsed.profiles[j].values == table.profiles[j].values);
  }
  irma::report::emit_relevance_csv(parsed, second);
  CHECK(slurp(first) == slurp(second));
}

TEST_CASE("relevance table rejects malformed input") {
  TempDir tmp;
  RelevanceTable bad_names;
  bad_names.feature_names = {"a,b"};
  bad_names.profiles = {{0, {1.0}}};
  CHECK_THROWS_AS(irma::report::emit_relevance_csv(
                      bad_names, (tmp.path / "x.csv").string()),
                  irma::ValidationError);

  RelevanceTable ragged;
  ragged.feature_names = {"a", "b"};
  ragged.profiles = {{0, {1.0}}};
  CHECK_THROWS_AS(irma::report::emit_relevance_csv(
                      ragged, (tmp.path / "y.csv").string()),
                  irma::ShapeMismatch);

  CHECK_THROWS_AS(
      irma::report::parse_relevance_csv(tmp.file("h.csv", "nope\n")),
      irma::ParseError);

  const std::string bad_number = tmp.file(
      "n.csv",
      "iteration,feature_index,feature_name,relevance\n0,1,a,xyz\n");
  try {
    irma::report::parse_relevance_csv(bad_number);
    FAIL("expected ParseError");
  } catch (const irma::ParseError& e) {
    CHECK(e.row() == 2);
    CHECK(e.col() == 4);
  }

  const std::string out_of_order = tmp.file(
      "o.csv",
      "iteration,feature_index,feature_name,relevance\n0,2,a,0.5\n");
  CHECK_THROWS_AS(irma::report::parse_relevance_csv(out_of_order),
                  irma::ParseError);

  CHECK_THROWS_AS(irma::report::parse_relevance_csv(
                      (tmp.path / "missing.csv").string()),
                  irma::IoError);
}

TEST_CASE("iteration accuracy table has the documented layout") {
  TempDir tmp;
  const std::string path = (tmp.path / "bac.csv").string();
  irma::report::emit_bac_table(std::vector<IterationBac>{{0, 0.5}}, path);
  CHECK(slurp(path) == "iteration,bac\n0,0.5\n");

  irma::report::emit_bac_table(
      std::vector<IterationBac>{{0, 0.96}, {1, 0.87}, {2, 0.5}}, path);
  const auto rows = irma::report::parse_iteration_bac_table(path);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].iteration == 1);
  CHECK(rows[1].bac == 0.87);

  const std::string second = (tmp.path / "bac2.csv").string();
  irma::report::emit_bac_table(rows, second);
  CHECK(slurp(path) == slurp(second));

  CHECK_THROWS_AS(irma::report::parse_iteration_bac_table(
                      tmp.file("bad.csv", "iteration,bac\n0\n")),
                  irma::ParseError);
}

TEST_CASE("summary table round-trips byte for byte") {
  TempDir tmp;
  std::vector<SummaryRow> rows(2);
  rows[0] = {"wisconsin", 1, "original", 0.9, 0.0125, 30};
  rows[1] = {"wisconsin", 3, "irma", 0.96425, 0.015, 2};
  const std::string first = (tmp.path / "summary.csv").string();
  irma::report::emit_bac_table(rows, first);

  const auto parsed = irma::report::parse_summary_table(first);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].dataset == "wisconsin");
  CHECK(parsed[0].prototypes_per_class == 1);
  CHECK(parsed[0].pipeline == "original");
  CHECK(parsed[0].mean_bac == 0.9);
  CHECK(parsed[0].std_bac == 0.0125);
  CHECK(parsed[0].dim == 30);
  CHECK(parsed[1].dim == 2);

  const std::string second = (tmp.path / "summary2.csv").string();
  irma::report::emit_bac_table(parsed, second);
  CHECK(slurp(first) == slurp(second));

  std::vector<SummaryRow> bad(1);
  bad[0] = {"wis,consin", 1, "original", 0.9, 0.0, 4};
  CHECK_THROWS_AS(
      irma::report::emit_bac_table(bad, (tmp.path / "bad.csv").string()),
      irma::ValidationError);
}

TEST_CASE("per-repeat table round-trips byte for byte") {
  TempDir tmp;
  irma::eval::EvalReport report;
  report.pipeline = "gmlvq";
  report.prototypes_per_class = 2;
  report.bacs = {0.5, 0.625, 0.96875};
  report.dims = {4, 3, 4};
  const std::string first = (tmp.path / "repeats.csv").string();
  irma::report::emit_repeats_csv(report, first);

  const auto parsed = irma::report::parse_repeats_csv(first);
  CHECK(parsed.pipeline == "gmlvq");
  CHECK(parsed.prototypes_per_class == 2);
  CHECK(parsed.bacs == report.bacs);
  CHECK(parsed.dims == report.dims);

  const std::string second = (tmp.path / "repeats2.csv").string();
  irma::report::emit_repeats_csv(parsed, second);
  CHECK(slurp(first) == slurp(second));

  const std::string shuffled = tmp.file(
      "bad.csv", "pipeline,prototypes,repeat,bac,dim\ngmlvq,2,1,0.5,4\n");
  CHECK_THROWS_AS(irma::report::parse_repeats_csv(shuffled),
                  irma::ParseError);

  irma::eval::EvalReport mismatched = report;
  mismatched.dims.pop_back();
  CHECK_THROWS_AS(irma::report::emit_repeats_csv(
                      mismatched, (tmp.path / "m.csv").string()),
                  irma::ShapeMismatch);
}

TEST_CASE("scatter output tags every data point with its class glyph") {
  TempDir tmp;
  const Dataset d = scatter_points({{0.0, 0.0}, {1.0, 2.0}}, {1, 2},
                                   {"alpha", "beta"});
  const std::string path = (tmp.path / "scatter.svg").string();
  irma::report::emit_scatter_svg(d, ScatterSpec{"demo"}, path);

  const std::string svg = slurp(path);
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("<?xml") == 0);
  CHECK(svg.find("width=\"640\"") != std::string::npos);
  CHECK(svg.find("height=\"480\"") != std::string::npos);

  // two tagged point markers with distinct identifiers; legend markers are
  // untagged so the count is exactly the point count
  CHECK(count_occurrences(svg, "class=\"glyph-") == 2);
  CHECK(count_occurrences(svg, "class=\"glyph-1\"") == 1);
  CHECK(count_occurrences(svg, "class=\"glyph-2\"") == 1);

  // legend shows both class names, title and axis labels are present
  CHECK(svg.find(">alpha</text>") != std::string::npos);
  CHECK(svg.find(">beta</text>") != std::string::npos);
  CHECK(svg.find(">demo</text>") != std::string::npos);
  CHECK(svg.find(">component 1</text>") != std::string::npos);
  CHECK(svg.find(">component 2</text>") != std::string::npos);
}

TEST_CASE("scatter output stays well-formed without points") {
  TempDir tmp;
  const Dataset d = scatter_points({}, {}, {"only"});
  const std::string path = (tmp.path / "empty.svg").string();
  irma::report::emit_scatter_svg(d, ScatterSpec{}, path);

  const std::string svg = slurp(path);
  CHECK(well_formed_xml(svg));
  CHECK(count_occurrences(svg, "class=\"glyph-") == 0);
  CHECK(svg.find(">only</text>") != std::string::npos);  // legend remains
}

TEST_CASE("scatter output escapes markup in names") {
  TempDir tmp;
  const Dataset d =
      scatter_points({{0.0, 1.0}}, {1}, {"a<b & \"c\""});
  const std::string path = (tmp.path / "escape.svg").string();
  ScatterSpec spec;
  spec.title = "x < y > z";
  irma::report::emit_scatter_svg(d, spec, path);
  const std::string svg = slurp(path);
  CHECK(well_formed_xml(svg));
  CHECK(svg.find("a&lt;b &amp; &quot;c&quot;") != std::string::npos);
  CHECK(svg.find("x &lt; y &gt; z") != std::string::npos);
}

TEST_CASE("a projected synthetic set renders at full size") {
  TempDir tmp;
  Dataset d = irma::data::gen_two_gaussians(300, 33);
  Dataset flat = scatter_points({}, d.labels, d.class_names);
  for (const auto& s : d.samples) flat.samples.push_back({s[0], s[1]});
  const std::string path = (tmp.path / "big.svg").string();
  irma::report::emit_scatter_svg(flat, ScatterSpec{"projection"}, path);

  const std::string svg = slurp(path);
  CHECK(well_formed_xml(svg));
  CHECK(count_occurrences(svg, "class=\"glyph-") == 600);
  CHECK(count_occurrences(svg, "class=\"glyph-1\"") == 300);
  CHECK(count_occurrences(svg, "class=\"glyph-2\"") == 300);
}

TEST_CASE("scatter input validation") {
  TempDir tmp;
  const std::string path = (tmp.path / "never.svg").string();

  Dataset wide = scatter_points({{1.0, 2.0, 3.0}}, {1}, {"a"});
  wide.feature_names = {"x", "y", "z"};
  CHECK_THROWS_AS(irma::report::emit_scatter_svg(wide, ScatterSpec{}, path),
                  irma::ShapeMismatch);

  std::vector<std::vector<double>> samples;
  std::vector<int> labels;
  std::vector<std::string> names;
  for (int c = 0; c < 13; ++c) {
    samples.push_back({static_cast<double>(c), 0.0});
    labels.push_back(c + 1);
    names.push_back("c" + std::to_string(c));
  }
  const Dataset crowded = scatter_points(samples, labels, names);
  CHECK_THROWS_AS(
      irma::report::emit_scatter_svg(crowded, ScatterSpec{}, path),
      irma::ValidationError);

  const Dataset infinite =
      scatter_points({{std::nan(""), 0.0}}, {1}, {"a"});
  CHECK_THROWS_AS(
      irma::report::emit_scatter_svg(infinite, ScatterSpec{}, path),
      irma::ValidationError);
}
