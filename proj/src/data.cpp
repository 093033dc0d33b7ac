#include "irma/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "irma/errors.hpp"
#include "irma/format.hpp"
#include "irma/rng.hpp"

namespace irma::data {

namespace {

const char* kWdbcFeatureNames[30] = {
    "radius_mean",        "texture_mean",     "perimeter_mean",
    "area_mean",          "smoothness_mean",  "compactness_mean",
    "concavity_mean",     "concave_points_mean", "symmetry_mean",
    "fractal_dimension_mean",
    "radius_se",          "texture_se",       "perimeter_se",
    "area_se",            "smoothness_se",    "compactness_se",
    "concavity_se",       "concave_points_se", "symmetry_se",
    "fractal_dimension_se",
    "radius_worst",       "texture_worst",    "perimeter_worst",
    "area_worst",         "smoothness_worst", "compactness_worst",
    "concavity_worst",    "concave_points_worst", "symmetry_worst",
    "fractal_dimension_worst"};

const char* kSegmentationFeatureNames[19] = {
    "region-centroid-col", "region-centroid-row", "region-pixel-count",
    "short-line-density-5", "short-line-density-2", "vedge-mean",
    "vedge-sd",            "hedge-mean",          "hedge-sd",
    "intensity-mean",      "rawred-mean",         "rawblue-mean",
    "rawgreen-mean",       "exred-mean",          "exblue-mean",
    "exgreen-mean",        "value-mean",          "saturation-mean",
    "hue-mean"};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    std::string field = line.substr(
        start, pos == std::string::npos ? std::string::npos : pos - start);
    // trim surrounding whitespace
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string()
                                         : field.substr(b, e - b + 1));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

double parse_number_or_throw(const std::string& s, std::size_t row,
                             std::size_t col) {
  double v;
  if (!parse_number(s, v))
    throw ParseError("cannot parse '" + s + "' as a number", row, col);
  if (!std::isfinite(v))
    throw ParseError("non-finite value '" + s + "'", row, col);
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool looks_numeric(const std::string& s) {
  double ignored;
  return parse_number(s, ignored);
}

CsvFormat detect_format(const std::vector<std::string>& lines,
                        const std::string& path) {
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    for (const std::string& f : fields)
      if (f == "label") return CsvFormat::canonical;
    if (fields.size() == 32 && (fields[1] == "M" || fields[1] == "B"))
      return CsvFormat::wdbc;
    if (fields.size() == 20 && !looks_numeric(fields[0]) &&
        looks_numeric(fields[1]))
      return CsvFormat::segmentation;
    if (!looks_numeric(fields[0])) continue;  // unknown header line
    break;
  }
  throw ParseError("cannot detect CSV format of '" + path +
                       "' (expected a 'label' header column, WDBC rows, or "
                       "UCI segmentation rows)",
                   1, 1);
}

struct RawTable {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_classes;
  std::vector<std::string> feature_names;
};

void append_canonical(RawTable& t, const std::vector<std::string>& lines,
                      const std::string& path) {
  std::size_t header_row = 0;
  std::vector<std::string> header;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    header = split_fields(lines[i]);
    header_row = i;
    break;
  }
  auto label_it = std::find(header.begin(), header.end(), "label");
  if (label_it == header.end())
    throw ParseError("no 'label' column in header of '" + path + "'",
                     header_row + 1, 1);
  std::size_t label_col = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_col) names.push_back(header[j]);
  if (t.feature_names.empty())
    t.feature_names = names;
  else if (t.feature_names != names)
    throw ParseError("feature names differ from previously loaded file",
                     header_row + 1, 1);

  for (std::size_t i = header_row + 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       i + 1, 1);
    std::vector<double> row;
    row.reserve(names.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_col) continue;
      row.push_back(parse_number_or_throw(fields[j], i + 1, j + 1));
    }
    t.rows.push_back(std::move(row));
    t.row_classes.push_back(fields[label_col]);
  }
}

void append_wdbc(RawTable& t, const std::vector<std::string>& lines,
                 const std::string&) {
  if (t.feature_names.empty())
    t.feature_names.assign(kWdbcFeatureNames, kWdbcFeatureNames + 30);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != 32)
      throw ParseError("WDBC row needs 32 fields (ID, diagnosis, 30 "
                       "features), got " +
                           std::to_string(fields.size()),
                       i + 1, 1);
    if (fields[1] != "M" && fields[1] != "B")
      throw ParseError("diagnosis must be M or B, got '" + fields[1] + "'",
                       i + 1, 2);
    std::vector<double> row;
    row.reserve(30);
    for (std::size_t j = 2; j < 32; ++j)
      row.push_back(parse_number_or_throw(fields[j], i + 1, j + 1));
    t.rows.push_back(std::move(row));
    t.row_classes.push_back(fields[1] == "B" ? "benign" : "malignant");
  }
}

void append_segmentation(RawTable& t, const std::vector<std::string>& lines,
                         const std::string& path) {
  if (t.feature_names.empty())
    t.feature_names.assign(kSegmentationFeatureNames,
                           kSegmentationFeatureNames + 19);
  bool seen_data = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split_fields(lines[i]);
    bool data_row = fields.size() == 20 && !looks_numeric(fields[0]) &&
                    looks_numeric(fields[1]);
    if (!data_row) {
      if (!seen_data) continue;  // header lines before the data block
      throw ParseError("malformed segmentation row", i + 1, 1);
    }
    seen_data = true;
    std::vector<double> row;
    row.reserve(19);
    for (std::size_t j = 1; j < 20; ++j)
      row.push_back(parse_number_or_throw(fields[j], i + 1, j + 1));
    t.rows.push_back(std::move(row));
    t.row_classes.push_back(fields[0]);
  }
  if (!seen_data)
    throw ParseError("no segmentation data rows found in '" + path + "'", 1,
                     1);
}

Dataset finalize(RawTable t, std::vector<std::string>* warnings) {
  if (t.rows.empty()) throw EmptyClass("dataset contains no samples");

  // Class ids in first-seen order.
  Dataset d;
  std::map<std::string, int> class_ids;
  for (const std::string& c : t.row_classes) {
    if (class_ids.emplace(c, static_cast<int>(d.class_names.size()) + 1)
            .second)
      d.class_names.push_back(c);
  }
  d.labels.reserve(t.row_classes.size());
  for (const std::string& c : t.row_classes) d.labels.push_back(class_ids[c]);

  // Drop constant-valued feature columns.
  const std::size_t n = t.feature_names.size();
  std::vector<bool> keep(n, false);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 1; i < t.rows.size(); ++i)
      if (t.rows[i][j] != t.rows[0][j]) {
        keep[j] = true;
        break;
      }
  for (std::size_t j = 0; j < n; ++j) {
    if (keep[j]) {
      d.feature_names.push_back(t.feature_names[j]);
    } else if (warnings) {
      warnings->push_back("dropping constant feature '" + t.feature_names[j] +
                          "' (value " + format_double(t.rows[0][j]) +
                          " for every sample)");
    }
  }
  d.samples.reserve(t.rows.size());
  for (std::vector<double>& row : t.rows) {
    std::vector<double> kept;
    kept.reserve(d.feature_names.size());
    for (std::size_t j = 0; j < n; ++j)
      if (keep[j]) kept.push_back(row[j]);
    d.samples.push_back(std::move(kept));
  }
  d.validate();
  return d;
}

}  // namespace

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int l : labels) counts[static_cast<std::size_t>(l - 1)]++;
  return counts;
}

void Dataset::validate() const {
  if (samples.size() != labels.size())
    throw ShapeMismatch("sample/label count mismatch");
  const std::size_t n = dim();
  for (const std::vector<double>& s : samples) {
    if (s.size() != n) throw ShapeMismatch("inconsistent sample dimension");
    for (double v : s)
      if (!std::isfinite(v))
        throw ValidationError("non-finite feature value in dataset");
  }
  const int c = num_classes();
  for (int l : labels)
    if (l < 1 || l > c)
      throw ValidationError("label " + std::to_string(l) +
                            " outside {1.." + std::to_string(c) + "}");
  for (std::size_t count : class_counts())
    if (count == 0) throw EmptyClass("a class has no samples");
}

Dataset load_csv(const std::vector<std::string>& paths, CsvFormat format,
                 std::vector<std::string>* warnings) {
  if (paths.empty()) throw IoError("no input files given");
  RawTable t;
  for (const std::string& path : paths) {
    std::vector<std::string> lines = read_lines(path);
    CsvFormat f = format == CsvFormat::auto_detect ? detect_format(lines, path)
                                                   : format;
    switch (f) {
      case CsvFormat::canonical:
        append_canonical(t, lines, path);
        break;
      case CsvFormat::wdbc:
        append_wdbc(t, lines, path);
        break;
      case CsvFormat::segmentation:
        append_segmentation(t, lines, path);
        break;
      default:
        throw IoError("unresolved CSV format");
    }
  }
  return finalize(std::move(t), warnings);
}

Dataset load_csv(const std::string& path, CsvFormat format,
                 std::vector<std::string>* warnings) {
  return load_csv(std::vector<std::string>{path}, format, warnings);
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const std::string& name : d.feature_names) out << name << ',';
  out << "label\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double v : d.samples[i]) out << format_double(v) << ',';
    out << d.class_names[static_cast<std::size_t>(d.labels[i] - 1)] << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Dataset gen_two_gaussians(std::size_t n_per_class, std::uint64_t seed) {
  if (n_per_class < 1) throw ValidationError("n_per_class must be >= 1");
  rng::Generator gen = rng::Generator::stream(seed, "gen");
  const double class_means[2][2] = {{-1.0, -8.0}, {1.0, 8.0}};
  const double informative_std[2] = {std::sqrt(2.0), std::sqrt(12.0)};

  Dataset d;
  d.feature_names = {"x1", "x2", "x3", "x4"};
  d.class_names = {"1", "2"};
  d.samples.reserve(2 * n_per_class);
  d.labels.reserve(2 * n_per_class);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      std::vector<double> x(4);
      x[0] = class_means[c][0] + informative_std[0] * gen.normal();
      x[1] = class_means[c][1] + informative_std[1] * gen.normal();
      x[2] = gen.normal();
      x[3] = gen.normal();
      d.samples.push_back(std::move(x));
      d.labels.push_back(c + 1);
    }
  }
  return d;
}

ZScoreTransform fit_zscore(const Dataset& d) {
  const std::size_t n = d.dim();
  const double p = static_cast<double>(d.size());
  ZScoreTransform t;
  t.means.assign(n, 0.0);
  t.std_devs.assign(n, 0.0);
  for (const std::vector<double>& s : d.samples)
    for (std::size_t j = 0; j < n; ++j) t.means[j] += s[j];
  for (std::size_t j = 0; j < n; ++j) t.means[j] /= p;
  for (const std::vector<double>& s : d.samples)
    for (std::size_t j = 0; j < n; ++j) {
      double dev = s[j] - t.means[j];
      t.std_devs[j] += dev * dev;
    }
  for (std::size_t j = 0; j < n; ++j) {
    t.std_devs[j] = std::sqrt(t.std_devs[j] / p);
    if (t.std_devs[j] < 1e-12)
      throw ZeroVariance("feature '" + d.feature_names[j] +
                         "' has zero variance");
  }
  return t;
}

Dataset apply_zscore(const ZScoreTransform& t, const Dataset& d) {
  if (t.dim() != d.dim())
    throw ShapeMismatch("z-score transform of dimension " +
                        std::to_string(t.dim()) + " applied to dataset of "
                        "dimension " + std::to_string(d.dim()));
  Dataset out = d;
  for (std::vector<double>& s : out.samples)
    for (std::size_t j = 0; j < s.size(); ++j)
      s[j] = (s[j] - t.means[j]) / t.std_devs[j];
  return out;
}

Dataset apply_zscore_inverse(const ZScoreTransform& t, const Dataset& d) {
  if (t.dim() != d.dim())
    throw ShapeMismatch("z-score transform dimension mismatch");
  Dataset out = d;
  for (std::vector<double>& s : out.samples)
    for (std::size_t j = 0; j < s.size(); ++j)
      s[j] = s[j] * t.std_devs[j] + t.means[j];
  return out;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& d,
                                             const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw ValidationError("train_fraction must lie in (0, 1)");
  rng::Generator gen = rng::Generator::stream(spec.seed, "split");

  std::vector<std::size_t> train_idx, test_idx;
  if (spec.stratified) {
    const std::size_t c = d.class_names.size();
    std::vector<std::vector<std::size_t>> by_class(c);
    for (std::size_t i = 0; i < d.size(); ++i)
      by_class[static_cast<std::size_t>(d.labels[i] - 1)].push_back(i);
    for (std::vector<std::size_t>& idx : by_class) {
      gen.shuffle(idx);
      std::size_t n_train = static_cast<std::size_t>(std::floor(
          spec.train_fraction * static_cast<double>(idx.size()) + 0.5));
      if (n_train == 0 || n_train == idx.size())
        throw EmptyClass("split fraction leaves a class without train or "
                         "test samples");
      train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + n_train);
      test_idx.insert(test_idx.end(), idx.begin() + n_train, idx.end());
    }
  } else {
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), 0);
    gen.shuffle(idx);
    std::size_t n_train = static_cast<std::size_t>(std::floor(
        spec.train_fraction * static_cast<double>(idx.size()) + 0.5));
    train_idx.assign(idx.begin(), idx.begin() + n_train);
    test_idx.assign(idx.begin() + n_train, idx.end());
  }

  auto take = [&](const std::vector<std::size_t>& idx) {
    Dataset out;
    out.feature_names = d.feature_names;
    out.class_names = d.class_names;
    out.samples.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (std::size_t i : idx) {
      out.samples.push_back(d.samples[i]);
      out.labels.push_back(d.labels[i]);
    }
    return out;
  };
  return {take(train_idx), take(test_idx)};
}

}  // namespace irma::data
