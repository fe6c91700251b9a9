#include "awlssvm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "awlssvm/errors.hpp"
#include "awlssvm/rng.hpp"

namespace awlssvm {

namespace fs = std::filesystem;
using nlohmann::json;

void MultiViewDataset::validate_shape() const {
  if (views.empty()) throw DatasetError("dataset '" + name + "' has no views");
  if (!view_names.empty() && view_names.size() != views.size()) {
    throw DatasetError("dataset '" + name + "': view name count does not match view count");
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].rows() != n) {
      throw DatasetError("view " + std::to_string(v) + " has " +
                         std::to_string(views[v].rows()) + " rows, expected " +
                         std::to_string(n));
    }
    if (!views[v].allFinite()) {
      throw DatasetError("view " + std::to_string(v) + " contains non-finite values");
    }
  }
  if (num_classes < 1) throw DatasetError("num_classes must be >= 1");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw DatasetError("label " + std::to_string(labels[i]) + " at row " +
                         std::to_string(i) + " is outside [0, " +
                         std::to_string(num_classes) + ")");
    }
  }
}

void MultiViewDataset::validate() const {
  validate_shape();
  const auto counts = class_counts();
  for (int c = 0; c < num_classes; ++c) {
    if (counts[c] == 0) {
      throw DatasetError("class " + std::to_string(c) + " has no samples");
    }
  }
}

std::vector<std::size_t> MultiViewDataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(num_classes, 0)), 0);
  for (int label : labels) {
    if (label >= 0 && label < num_classes) ++counts[label];
  }
  return counts;
}

MultiViewDataset MultiViewDataset::subset(std::span<const std::size_t> rows) const {
  MultiViewDataset out;
  out.name = name;
  out.view_names = view_names;
  out.num_classes = num_classes;
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= labels.size()) throw InputShapeError("subset: row index out of range");
    out.labels.push_back(labels[r]);
  }
  out.views.reserve(views.size());
  for (const Matrix& view : views) {
    Matrix sub(static_cast<Eigen::Index>(rows.size()), view.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = view.row(static_cast<Eigen::Index>(rows[i]));
    }
    out.views.push_back(std::move(sub));
  }
  return out;
}

// ---------------------------------------------------------------------------
// I/O

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  // A trailing newline is not an extra empty row.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !token.empty();
}

Matrix read_view_csv(const fs::path& path, const std::string& view_name, std::size_t rows,
                     std::size_t dim) {
  if (!fs::exists(path)) {
    throw DatasetError("view '" + view_name + "': missing file '" + path.string() + "'");
  }
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.size() != rows) {
    throw DatasetError("view '" + view_name + "' (" + path.string() + ") has " +
                       std::to_string(lines.size()) + " rows, manifest declares " +
                       std::to_string(rows));
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < rows; ++r) {
    std::string_view line = lines[r];
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view token =
          line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                             : comma - start);
      if (col >= dim) {
        throw DatasetError("view '" + view_name + "' row " + std::to_string(r) +
                           " has more than " + std::to_string(dim) + " columns");
      }
      double value = 0.0;
      if (!parse_number(token, value)) {
        throw DatasetError("view '" + view_name + "' row " + std::to_string(r) + " column " +
                           std::to_string(col) + ": cannot parse '" + std::string(token) +
                           "'");
      }
      if (!std::isfinite(value)) {
        throw DatasetError("view '" + view_name + "' row " + std::to_string(r) + " column " +
                           std::to_string(col) + ": non-finite value");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = value;
      ++col;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (col != dim) {
      throw DatasetError("view '" + view_name + "' row " + std::to_string(r) + " has " +
                         std::to_string(col) + " columns, manifest declares " +
                         std::to_string(dim));
    }
  }
  return m;
}

std::vector<int> read_labels(const fs::path& path, std::size_t rows, int num_classes) {
  if (!fs::exists(path)) throw DatasetError("missing labels file '" + path.string() + "'");
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.size() != rows) {
    throw DatasetError("labels file '" + path.string() + "' has " +
                       std::to_string(lines.size()) + " rows, manifest declares " +
                       std::to_string(rows));
  }
  std::vector<int> labels(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!parse_number(lines[r], labels[r])) {
      throw DatasetError("labels row " + std::to_string(r) + ": cannot parse '" +
                         std::string(lines[r]) + "'");
    }
    if (labels[r] < 0 || labels[r] >= num_classes) {
      throw DatasetError("labels row " + std::to_string(r) + ": value " +
                         std::to_string(labels[r]) + " is outside [0, " +
                         std::to_string(num_classes) + ")");
    }
  }
  return labels;
}

template <typename T>
T manifest_field(const json& manifest, const char* key) {
  if (!manifest.contains(key)) {
    throw DatasetError(std::string("manifest.json: missing field '") + key + "'");
  }
  try {
    return manifest.at(key).get<T>();
  } catch (const json::exception&) {
    throw DatasetError(std::string("manifest.json: field '") + key + "' has the wrong type");
  }
}

void append_double(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

MultiViewDataset load_dataset(const fs::path& dir, bool require_labels) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw DatasetError("missing file '" + manifest_path.string() + "'");
  }
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw DatasetError("manifest.json: " + std::string(e.what()));
  }

  MultiViewDataset ds;
  ds.name = manifest_field<std::string>(manifest, "name");
  const auto n = manifest_field<long long>(manifest, "num_samples");
  ds.num_classes = manifest_field<int>(manifest, "num_classes");
  if (n < 1) throw DatasetError("manifest.json: num_samples must be >= 1");
  if (ds.num_classes < 1) throw DatasetError("manifest.json: num_classes must be >= 1");

  const auto views = manifest_field<json>(manifest, "views");
  if (!views.is_array() || views.empty()) {
    throw DatasetError("manifest.json: 'views' must be a non-empty array");
  }
  for (const json& entry : views) {
    const auto view_name = manifest_field<std::string>(entry, "name");
    const auto file = manifest_field<std::string>(entry, "file");
    const auto dim = manifest_field<long long>(entry, "dim");
    if (dim < 1) throw DatasetError("view '" + view_name + "': dim must be >= 1");
    ds.view_names.push_back(view_name);
    ds.views.push_back(read_view_csv(dir / file, view_name, static_cast<std::size_t>(n),
                                     static_cast<std::size_t>(dim)));
  }

  const bool has_labels = manifest.contains("labels_file");
  if (has_labels) {
    ds.labels = read_labels(dir / manifest_field<std::string>(manifest, "labels_file"),
                            static_cast<std::size_t>(n), ds.num_classes);
    ds.validate();
  } else if (require_labels) {
    throw DatasetError("manifest.json: missing field 'labels_file'");
  }
  return ds;
}

void save_dataset(const MultiViewDataset& ds, const fs::path& dir) {
  ds.validate_shape();
  fs::create_directories(dir);
  json manifest;
  manifest["name"] = ds.name;
  manifest["num_samples"] = ds.num_samples();
  manifest["num_classes"] = ds.num_classes;
  manifest["labels_file"] = "labels.txt";
  manifest["views"] = json::array();
  for (std::size_t v = 0; v < ds.views.size(); ++v) {
    const std::string view_name =
        ds.view_names.empty() ? "view" + std::to_string(v) : ds.view_names[v];
    const std::string file = "view" + std::to_string(v) + ".csv";
    manifest["views"].push_back(
        {{"name", view_name}, {"file", file}, {"dim", ds.views[v].cols()}});

    std::string text;
    const Matrix& m = ds.views[v];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) text.push_back(',');
        append_double(text, m(r, c));
      }
      text.push_back('\n');
    }
    write_file(dir / file, text);
  }
  std::string labels;
  for (int label : ds.labels) labels += std::to_string(label) + "\n";
  write_file(dir / "labels.txt", labels);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::vector<std::vector<std::size_t>> indices_by_class(std::span<const int> labels,
                                                       int num_classes) {
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ArgumentError("label " + std::to_string(labels[i]) + " at row " +
                          std::to_string(i) + " is out of range");
    }
    by_class[labels[i]].push_back(i);
  }
  return by_class;
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split_indices(
    std::span<const int> labels, int num_classes, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test_fraction must lie in (0, 1)");
  }
  auto by_class = indices_by_class(labels, num_classes);
  Rng rng(seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  for (int c = 0; c < num_classes; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw StratificationError("class " + std::to_string(c) +
                                " has a single sample; cannot stratify");
    }
    fisher_yates(std::span(members), rng);
    const auto count = static_cast<double>(members.size());
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * count));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    test.insert(test.end(), members.begin(), members.begin() + n_test);
    train.insert(train.end(), members.begin() + n_test, members.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

std::pair<MultiViewDataset, MultiViewDataset> stratified_split(const MultiViewDataset& ds,
                                                               double test_fraction,
                                                               std::uint64_t seed) {
  auto [train, test] = stratified_split_indices(ds.labels, ds.num_classes, test_fraction, seed);
  return {ds.subset(train), ds.subset(test)};
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels,
                                                       int num_classes, int k,
                                                       std::uint64_t seed) {
  if (k < 2) throw ArgumentError("k-fold needs k >= 2");
  if (static_cast<std::size_t>(k) > labels.size()) {
    throw StratificationError("more folds than samples");
  }
  auto by_class = indices_by_class(labels, num_classes);
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  // Round-robin continues across classes so fold sizes differ by at most one.
  std::size_t next = 0;
  for (int c = 0; c < num_classes; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw StratificationError("class " + std::to_string(c) +
                                " has a single sample; cannot build folds");
    }
    fisher_yates(std::span(members), rng);
    for (std::size_t idx : members) {
      folds[next % folds.size()].push_back(idx);
      ++next;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

MultiViewDataset stratified_downsample(const MultiViewDataset& ds, std::size_t target_n,
                                       std::uint64_t seed) {
  const std::size_t n = ds.num_samples();
  if (target_n == 0 || target_n > n) {
    throw AllocationError("downsample target " + std::to_string(target_n) +
                          " must lie in [1, " + std::to_string(n) + "]");
  }
  auto by_class = indices_by_class(ds.labels, ds.num_classes);
  const std::size_t num_classes = by_class.size();

  std::vector<std::size_t> alloc(num_classes, 0);
  std::vector<double> remainder(num_classes, 0.0);
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const double quota = static_cast<double>(target_n) * static_cast<double>(by_class[c].size()) /
                         static_cast<double>(n);
    alloc[c] = static_cast<std::size_t>(std::floor(quota));
    remainder[c] = quota - std::floor(quota);
    assigned += alloc[c];
  }
  std::vector<std::size_t> order(num_classes);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < target_n; ++i, ++assigned) ++alloc[order[i % num_classes]];

  Rng rng(seed);
  std::vector<std::size_t> keep;
  keep.reserve(target_n);
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (alloc[c] == 0) {
      throw AllocationError("downsample target " + std::to_string(target_n) +
                            " leaves class " + std::to_string(c) + " without samples");
    }
    fisher_yates(std::span(members), rng);
    keep.insert(keep.end(), members.begin(), members.begin() + alloc[c]);
  }
  std::sort(keep.begin(), keep.end());
  return ds.subset(keep);
}

MultiViewDataset retain_top_classes(const MultiViewDataset& ds, int k) {
  if (k <= 0) throw ArgumentError("retain_top_classes: k must be > 0");
  if (k > ds.num_classes) {
    throw ArgumentError("retain_top_classes: k=" + std::to_string(k) + " exceeds " +
                        std::to_string(ds.num_classes) + " classes");
  }
  const auto counts = ds.class_counts();
  std::vector<int> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return counts[a] > counts[b]; });

  std::vector<int> relabel(counts.size(), -1);
  for (int rank = 0; rank < k; ++rank) relabel[order[rank]] = rank;

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (relabel[ds.labels[i]] >= 0) keep.push_back(i);
  }
  MultiViewDataset out = ds.subset(keep);
  out.num_classes = k;
  for (int& label : out.labels) label = relabel[label];
  return out;
}

Matrix concatenate_views(std::span<const Matrix> views) {
  if (views.empty()) throw InputShapeError("concatenate_views: no views");
  Eigen::Index cols = 0;
  for (const Matrix& v : views) {
    if (v.rows() != views.front().rows()) {
      throw InputShapeError("concatenate_views: views disagree on sample count");
    }
    cols += v.cols();
  }
  Matrix out(views.front().rows(), cols);
  Eigen::Index offset = 0;
  for (const Matrix& v : views) {
    out.middleCols(offset, v.cols()) = v;
    offset += v.cols();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standardization

StandardizationStats standardize_fit(const Matrix& train) {
  if (train.rows() < 1) throw InputShapeError("standardize_fit: empty matrix");
  StandardizationStats stats;
  stats.mean = train.colwise().mean().transpose();
  stats.scale.resize(train.cols());
  for (Eigen::Index j = 0; j < train.cols(); ++j) {
    const double var =
        (train.col(j).array() - stats.mean[j]).square().sum() / static_cast<double>(train.rows());
    const double sd = std::sqrt(var);
    // Rounding in the mean leaves a tiny spread on constant columns.
    const double floor = 1e-12 * std::max(1.0, std::abs(stats.mean[j]));
    stats.scale[j] = sd > floor ? sd : 0.0;
  }
  return stats;
}

Matrix standardize_apply(const StandardizationStats& stats, const Matrix& x) {
  if (x.cols() != stats.mean.size()) {
    throw InputShapeError("standardize_apply: matrix has " + std::to_string(x.cols()) +
                          " features, statistics cover " + std::to_string(stats.mean.size()));
  }
  Matrix z(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (stats.scale[j] == 0.0) {
      z.col(j).setZero();
    } else {
      z.col(j) = (x.col(j).array() - stats.mean[j]) / stats.scale[j];
    }
  }
  return z;
}

Matrix standardize_invert(const StandardizationStats& stats, const Matrix& z) {
  if (z.cols() != stats.mean.size()) {
    throw InputShapeError("standardize_invert: feature count mismatch");
  }
  Matrix x(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    x.col(j) = (z.col(j).array() * stats.scale[j]) + stats.mean[j];
  }
  return x;
}

}  // namespace awlssvm
