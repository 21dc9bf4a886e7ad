#include "eel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "eel/random.hpp"

namespace eel {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) {
    return std::nullopt;
  }
  if (cell.front() == '+') {
    cell.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return cells;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, std::size_t features,
                 std::vector<ClassIndex> labels, std::size_t classes,
                 std::vector<std::string> class_names)
    : rows_(std::move(values)),
      labels_(std::move(labels)),
      features_(features),
      classes_(classes),
      class_names_(std::move(class_names)) {
  const std::size_t n = labels_.size();
  if (rows_.size() != n * features_) {
    throw std::invalid_argument("dataset: value count does not match n x d");
  }
  for (double v : rows_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("dataset: non-finite feature value");
    }
  }
  for (ClassIndex y : labels_) {
    if (y < 0 || static_cast<std::size_t>(y) >= classes_) {
      throw std::invalid_argument("dataset: label outside {0..K-1}");
    }
  }
  if (class_names_.empty()) {
    for (std::size_t k = 0; k < classes_; ++k) {
      class_names_.push_back(std::to_string(k));
    }
  } else if (class_names_.size() != classes_) {
    throw std::invalid_argument("dataset: class name count does not match K");
  }
  columns_.resize(rows_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < features_; ++j) {
      columns_[j * n + i] = rows_[i * features_ + j];
    }
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * features_);
  std::vector<ClassIndex> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) {
      throw std::out_of_range("dataset: subset index out of range");
    }
    const auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(std::move(values), features_, std::move(labels), classes_, class_names_);
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes_, 0);
  for (ClassIndex y : labels_) {
    ++counts[static_cast<std::size_t>(y)];
  }
  return counts;
}

Dataset parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!trim(line).empty()) {
      lines.push_back(std::move(line));
    }
  }
  if (lines.empty()) {
    throw std::runtime_error("csv: no usable rows");
  }

  const std::size_t columns = split_cells(lines.front()).size();
  if (columns < 2) {
    throw std::runtime_error("csv: need at least one feature column and a label column");
  }
  const long label_col = options.label_column < 0
                             ? static_cast<long>(columns) + options.label_column
                             : options.label_column;
  if (label_col < 0 || label_col >= static_cast<long>(columns)) {
    throw std::out_of_range("csv: label column " + std::to_string(options.label_column) +
                            " out of range for " + std::to_string(columns) + " columns");
  }
  const auto label_index = static_cast<std::size_t>(label_col);

  std::size_t first = 0;
  {
    const auto header = split_cells(lines.front());
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != label_index && !parse_number(header[c])) {
        first = 1;
        break;
      }
    }
  }

  const std::size_t d = columns - 1;
  std::vector<double> values;
  std::vector<ClassIndex> labels;
  std::vector<std::string> names;
  std::unordered_map<std::string, ClassIndex> index_of;
  std::vector<double> row(d);
  for (std::size_t l = first; l < lines.size(); ++l) {
    const auto cells = split_cells(lines[l]);
    if (cells.size() != columns) {
      throw std::runtime_error("csv: line " + std::to_string(l + 1) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(columns));
    }
    bool usable = true;
    std::size_t j = 0;
    for (std::size_t c = 0; c < columns && usable; ++c) {
      if (c == label_index) {
        continue;
      }
      const auto v = parse_number(cells[c]);
      if (!v) {
        usable = false;
      } else {
        row[j++] = *v;
      }
    }
    const std::string label(trim(cells[label_index]));
    if (!usable || label.empty()) {
      continue;  // MissingPolicy::drop_rows
    }
    auto [it, inserted] = index_of.try_emplace(label, static_cast<ClassIndex>(names.size()));
    if (inserted) {
      names.push_back(label);
    }
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(it->second);
  }

  if (labels.empty()) {
    throw std::runtime_error("csv: no usable rows");
  }
  if (names.size() < 2) {
    throw std::runtime_error("csv: data has a single class");
  }
  const std::size_t classes = names.size();
  return Dataset(std::move(values), d, std::move(labels), classes, std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("csv: cannot read " + path.string());
  }
  return parse_csv(in, options);
}

double NormParams::apply(std::size_t feature, double x) const {
  const double lo = min[feature];
  const double hi = max[feature];
  if (hi == lo) {
    return 0.0;
  }
  return 2.0 * (x - lo) / (hi - lo) - 1.0;
}

NormParams fit_normalizer(const Dataset& train) {
  if (train.empty()) {
    throw std::invalid_argument("normalizer: empty training data");
  }
  NormParams params;
  params.min.resize(train.features());
  params.max.resize(train.features());
  for (std::size_t j = 0; j < train.features(); ++j) {
    const auto col = train.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    params.min[j] = *lo;
    params.max[j] = *hi;
  }
  return params;
}

Dataset apply_normalizer(const NormParams& params, const Dataset& data) {
  if (params.min.size() != data.features() || params.max.size() != data.features()) {
    throw std::invalid_argument("normalizer: dimension mismatch");
  }
  std::vector<double> values(data.values().begin(), data.values().end());
  const std::size_t d = data.features();
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      values[i * d + j] = params.apply(j, values[i * d + j]);
    }
  }
  return Dataset(std::move(values), d,
                 std::vector<ClassIndex>(data.labels().begin(), data.labels().end()),
                 data.classes(), data.class_names());
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : assignments) {
    ++sizes[f];
  }
  return sizes;
}

FoldPlan stratified_kfold(const Dataset& data, std::size_t k, std::uint64_t seed) {
  if (k < 2) {
    throw std::invalid_argument("stratified_kfold: k must be at least 2");
  }
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < k) {
      throw std::invalid_argument("stratified_kfold: class " + std::to_string(c) + " has " +
                                  std::to_string(counts[c]) + " examples, fewer than k=" +
                                  std::to_string(k));
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.assign(data.size(), 0);

  Rng rng(seed);
  std::size_t deal = 0;
  for (std::size_t c = 0; c < data.classes(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (static_cast<std::size_t>(data.label(i)) == c) {
        members.push_back(i);
      }
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i : members) {
      plan.assignments[i] = deal++ % k;
    }
  }
  return plan;
}

}  // namespace eel
