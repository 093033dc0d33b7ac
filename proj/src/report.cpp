#include "irma/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "irma/errors.hpp"
#include "irma/format.hpp"

namespace irma::report {

namespace {

void check_field(const std::string& text) {
  if (text.find(',') != std::string::npos ||
      text.find('\n') != std::string::npos ||
      text.find('\r') != std::string::npos)
    throw ValidationError("text field \"" + text +
                          "\" contains a separator character");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed while writing " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& text, std::size_t row,
                    std::size_t col) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("bad number \"" + text + "\"", row, col);
  return value;
}

long long parse_int(const std::string& text, std::size_t row,
                    std::size_t col) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("bad integer \"" + text + "\"", row, col);
  return value;
}

void expect_header(const std::vector<std::string>& lines,
                   const std::string& header, const std::string& path) {
  if (lines.empty() || lines[0] != header)
    throw ParseError("expected header \"" + header + "\" in " + path, 1, 1);
}

std::vector<std::string> data_row(const std::vector<std::string>& lines,
                                  std::size_t i, std::size_t fields,
                                  const std::string& path) {
  auto row = split_row(lines[i]);
  if (row.size() != fields)
    throw ParseError("expected " + std::to_string(fields) + " fields in " +
                         path,
                     i + 1, row.size());
  return row;
}

}  // namespace

// --- relevance profiles ---

void emit_relevance_csv(const RelevanceTable& table, const std::string& path) {
  const std::size_t n = table.feature_names.size();
  for (const std::string& name : table.feature_names) check_field(name);
  for (const RelevanceProfile& p : table.profiles)
    if (p.values.size() != n)
      throw ShapeMismatch("profile size does not match the feature names");

  std::ofstream out = open_out(path);
  out << "iteration,feature_index,feature_name,relevance\n";
  for (const RelevanceProfile& p : table.profiles)
    for (std::size_t k = 0; k < n; ++k)
      out << p.iteration << ',' << k + 1 << ',' << table.feature_names[k]
          << ',' << format_double(p.values[k]) << '\n';
  finish(out, path);
}

RelevanceTable parse_relevance_csv(const std::string& path) {
  const auto lines = read_lines(path);
  expect_header(lines, "iteration,feature_index,feature_name,relevance", path);

  RelevanceTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = data_row(lines, i, 4, path);
    const int iteration = static_cast<int>(parse_int(row[0], i + 1, 1));
    const auto index = static_cast<std::size_t>(parse_int(row[1], i + 1, 2));
    const double value = parse_double(row[3], i + 1, 4);

    if (table.profiles.empty() || table.profiles.back().iteration != iteration)
      table.profiles.push_back({iteration, {}});
    RelevanceProfile& p = table.profiles.back();
    if (index != p.values.size() + 1)
      throw ParseError("feature indices out of order", i + 1, 2);
    p.values.push_back(value);
    if (table.profiles.size() == 1) table.feature_names.push_back(row[2]);
  }
  for (const RelevanceProfile& p : table.profiles)
    if (p.values.size() != table.feature_names.size())
      throw ParseError("ragged profile for iteration " +
                           std::to_string(p.iteration),
                       lines.size(), 1);
  return table;
}

// --- accuracy tables ---

void emit_bac_table(const std::vector<IterationBac>& rows,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iteration,bac\n";
  for (const IterationBac& r : rows)
    out << r.iteration << ',' << format_double(r.bac) << '\n';
  finish(out, path);
}

std::vector<IterationBac> parse_iteration_bac_table(const std::string& path) {
  const auto lines = read_lines(path);
  expect_header(lines, "iteration,bac", path);
  std::vector<IterationBac> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = data_row(lines, i, 2, path);
    rows.push_back({static_cast<int>(parse_int(row[0], i + 1, 1)),
                    parse_double(row[1], i + 1, 2)});
  }
  return rows;
}

void emit_bac_table(const std::vector<SummaryRow>& rows,
                    const std::string& path) {
  for (const SummaryRow& r : rows) {
    check_field(r.dataset);
    check_field(r.pipeline);
  }
  std::ofstream out = open_out(path);
  out << "dataset,prototypes,pipeline,mean_bac,std_bac,dim\n";
  for (const SummaryRow& r : rows)
    out << r.dataset << ',' << r.prototypes_per_class << ',' << r.pipeline
        << ',' << format_double(r.mean_bac) << ',' << format_double(r.std_bac)
        << ',' << r.dim << '\n';
  finish(out, path);
}

std::vector<SummaryRow> parse_summary_table(const std::string& path) {
  const auto lines = read_lines(path);
  expect_header(lines, "dataset,prototypes,pipeline,mean_bac,std_bac,dim",
                path);
  std::vector<SummaryRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = data_row(lines, i, 6, path);
    SummaryRow r;
    r.dataset = row[0];
    r.prototypes_per_class = static_cast<int>(parse_int(row[1], i + 1, 2));
    r.pipeline = row[2];
    r.mean_bac = parse_double(row[3], i + 1, 4);
    r.std_bac = parse_double(row[4], i + 1, 5);
    r.dim = static_cast<std::size_t>(parse_int(row[5], i + 1, 6));
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_repeats_csv(const eval::EvalReport& report,
                      const std::string& path) {
  check_field(report.pipeline);
  if (report.bacs.size() != report.dims.size())
    throw ShapeMismatch("report has mismatched bac and dim counts");
  std::ofstream out = open_out(path);
  out << "pipeline,prototypes,repeat,bac,dim\n";
  for (std::size_t r = 0; r < report.bacs.size(); ++r)
    out << report.pipeline << ',' << report.prototypes_per_class << ',' << r
        << ',' << format_double(report.bacs[r]) << ',' << report.dims[r]
        << '\n';
  finish(out, path);
}

eval::EvalReport parse_repeats_csv(const std::string& path) {
  const auto lines = read_lines(path);
  expect_header(lines, "pipeline,prototypes,repeat,bac,dim", path);
  eval::EvalReport report;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = data_row(lines, i, 5, path);
    if (i == 1) {
      report.pipeline = row[0];
      report.prototypes_per_class =
          static_cast<int>(parse_int(row[1], i + 1, 2));
    }
    if (static_cast<std::size_t>(parse_int(row[2], i + 1, 3)) !=
        report.bacs.size())
      throw ParseError("repeat indices out of order", i + 1, 3);
    report.bacs.push_back(parse_double(row[3], i + 1, 4));
    report.dims.push_back(static_cast<std::size_t>(parse_int(row[4], i + 1, 5)));
  }
  return report;
}

// --- scatter SVG ---

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr double kMarginLeft = 64, kMarginRight = 150;
constexpr double kMarginTop = 36, kMarginBottom = 52;
constexpr int kMaxClasses = 12;
constexpr int kTicks = 5;

const char* const kColors[kMaxClasses] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range padded_range(double lo, double hi) {
  if (lo > hi) return {0.0, 1.0};  // no points
  if (lo == hi) return {lo - 1.0, hi + 1.0};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

// One marker per glyph index; shapes repeat after six, colors stay unique.
// Data points are tagged class="glyph-K"; legend samples are left untagged
// so point markers can be counted and identified in the output.
void marker(std::ostream& out, int glyph, double x, double y,
            const char* color, bool tagged) {
  const double r = 4.0;
  const std::string cls =
      tagged ? " class=\"glyph-" + std::to_string(glyph + 1) + "\"" : "";
  switch (glyph % 6) {
    case 0:
      out << "<circle" << cls << " cx=\"" << coord(x) << "\" cy=\""
          << coord(y) << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
      break;
    case 1:
      out << "<rect" << cls << " x=\"" << coord(x - r) << "\" y=\""
          << coord(y - r) << "\" width=\"" << 2 * r << "\" height=\"" << 2 * r
          << "\" fill=\"" << color << "\"/>\n";
      break;
    case 2:  // triangle
      out << "<path" << cls << " d=\"M" << coord(x) << ' ' << coord(y - r)
          << " L" << coord(x - r) << ' ' << coord(y + r) << " L"
          << coord(x + r) << ' ' << coord(y + r) << " Z\" fill=\"" << color
          << "\"/>\n";
      break;
    case 3:  // diamond
      out << "<path" << cls << " d=\"M" << coord(x) << ' ' << coord(y - r)
          << " L" << coord(x + r) << ' ' << coord(y) << " L" << coord(x)
          << ' ' << coord(y + r) << " L" << coord(x - r) << ' ' << coord(y)
          << " Z\" fill=\"" << color << "\"/>\n";
      break;
    case 4:  // plus
      out << "<path" << cls << " d=\"M" << coord(x - r) << ' ' << coord(y)
          << " H" << coord(x + r) << " M" << coord(x) << ' ' << coord(y - r)
          << " V" << coord(y + r) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\" fill=\"none\"/>\n";
      break;
    default:  // cross
      out << "<path" << cls << " d=\"M" << coord(x - r) << ' ' << coord(y - r)
          << " L" << coord(x + r) << ' ' << coord(y + r) << " M"
          << coord(x - r) << ' ' << coord(y + r) << " L" << coord(x + r)
          << ' ' << coord(y - r) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\" fill=\"none\"/>\n";
  }
}

}  // namespace

void emit_scatter_svg(const data::Dataset& points, const ScatterSpec& spec,
                      const std::string& path) {
  if (points.size() > 0 && points.dim() != 2)
    throw ShapeMismatch("scatter input must have exactly 2 coordinates");
  if (points.num_classes() > kMaxClasses)
    throw ValidationError("scatter supports at most " +
                          std::to_string(kMaxClasses) + " classes");
  for (const auto& p : points.samples)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw ValidationError("scatter input has non-finite coordinates");

  double xlo = 1.0, xhi = 0.0, ylo = 1.0, yhi = 0.0;  // inverted when empty
  if (points.size() > 0) {
    xlo = xhi = points.samples[0][0];
    ylo = yhi = points.samples[0][1];
    for (const auto& p : points.samples) {
      xlo = std::min(xlo, p[0]);
      xhi = std::max(xhi, p[0]);
      ylo = std::min(ylo, p[1]);
      yhi = std::max(yhi, p[1]);
    }
  }
  const Range xr = padded_range(xlo, xhi);
  const Range yr = padded_range(ylo, yhi);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto to_x = [&](double v) {
    return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto to_y = [&](double v) {
    return kMarginTop + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << xml_escape(spec.title) << "</text>\n";

  // frame
  svg << "<rect x=\"" << coord(kMarginLeft) << "\" y=\"" << coord(kMarginTop)
      << "\" width=\"" << coord(plot_w) << "\" height=\"" << coord(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t < kTicks; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / (kTicks - 1);
    const double fy = yr.lo + (yr.hi - yr.lo) * t / (kTicks - 1);
    const double px = to_x(fx);
    const double py = to_y(fy);
    svg << "<line x1=\"" << coord(px) << "\" y1=\""
        << coord(kMarginTop + plot_h) << "\" x2=\"" << coord(px) << "\" y2=\""
        << coord(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(px) << "\" y=\""
        << coord(kMarginTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << tick_label(fx) << "</text>\n"
        << "<line x1=\"" << coord(kMarginLeft - 5) << "\" y1=\"" << coord(py)
        << "\" x2=\"" << coord(kMarginLeft) << "\" y2=\"" << coord(py)
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(kMarginLeft - 8) << "\" y=\""
        << coord(py + 4) << "\" text-anchor=\"end\">" << tick_label(fy)
        << "</text>\n";
  }
  svg << "</g>\n";

  // axis labels
  svg << "<text x=\"" << coord(kMarginLeft + plot_w / 2) << "\" y=\""
      << coord(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << coord(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << coord(kMarginTop + plot_h / 2) << ")\">" << xml_escape(spec.y_label)
      << "</text>\n";

  // legend
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int c = 0; c < points.num_classes(); ++c) {
    const double lx = kWidth - kMarginRight + 24;
    const double ly = kMarginTop + 12 + 20.0 * c;
    marker(svg, c, lx, ly, kColors[c], /*tagged=*/false);
    svg << "<text x=\"" << coord(lx + 12) << "\" y=\"" << coord(ly + 4)
        << "\">" << xml_escape(points.class_names[c]) << "</text>\n";
  }
  svg << "</g>\n";

  // points
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int c = points.labels[i] - 1;
    marker(svg, c, to_x(points.samples[i][0]), to_y(points.samples[i][1]),
           kColors[c], /*tagged=*/true);
  }
  svg << "</svg>\n";

  std::ofstream out = open_out(path);
  out << svg.str();
  finish(out, path);
}

}  // namespace irma::report
