#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eel/baselines.hpp"
#include "eel/dataset.hpp"
#include "eel/stats.hpp"
#include "eel/strategies.hpp"

namespace eel {

enum class Method { lms, ga, boost, off_eel, on_eel };
enum class Normalization { per_fold, global };
enum class Profile { paper, desk };

std::string_view method_name(Method m) noexcept;
Method parse_method(std::string_view name);
Profile parse_profile(std::string_view name);

struct ExperimentConfig {
  std::string dataset;
  int label_column = -1;
  Method method = Method::off_eel;
  std::size_t folds = 10;
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  Normalization normalization = Normalization::per_fold;
  /// Concurrent (fold, run) cells; does not affect results.
  std::size_t workers = 1;
  EELConfig eel;
  LMSConfig lms;
  BoostConfig boost;

  /// `desk`: population 100, 20000 evaluations, 10 folds x 3 runs, 200 boosting
  /// rounds. `paper`: the reference settings (the defaults).
  void apply_profile(Profile profile);

  /// Sets one key of the flat key=value format. Throws std::invalid_argument
  /// for an unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);

  void validate() const;

  /// Every result-affecting setting as key/value text, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Reads `key = value` lines ('#' starts a comment) on top of `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

struct RunRecord {
  std::size_t fold = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double train_error = 0.0;
  double test_error = 0.0;
  std::optional<double> ensemble_size;
  double wall_time = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct ExperimentReport {
  std::string method;
  std::string dataset;
  std::size_t examples = 0;
  std::size_t features = 0;
  std::vector<std::string> class_names;
  std::size_t folds = 0;
  std::size_t runs = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t fold_seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> assumptions;
  std::vector<RunRecord> records;
  Summary train_error;
  Summary test_error;
  std::optional<Summary> ensemble_size;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Seed of cell (fold, run); independent of every other cell.
std::uint64_t cell_seed(std::uint64_t master, std::size_t fold, std::size_t run) noexcept;
std::uint64_t fold_plan_seed(std::uint64_t master) noexcept;

/// Recomputes the summaries from the records.
void summarize_records(ExperimentReport& report);

struct ExperimentHooks {
  /// Per-generation telemetry of the evolutionary methods. Calls are
  /// serialised but arrive in completion order when workers > 1.
  std::function<void(std::size_t fold, std::size_t run, const GenerationStats&)> telemetry;
  /// Trained model of each cell, as JSON.
  std::function<void(std::size_t fold, std::size_t run, const nlohmann::json&)> model;
};

/// Stratified k-fold x r runs of one method on `data`. The fold plan comes
/// from the master seed alone, so every method sees the same folds.
ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& cfg,
                                const ExperimentHooks& hooks = {});
/// Loads cfg.dataset first.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const ExperimentHooks& hooks = {});

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);
ExperimentReport load_report(const std::filesystem::path& path);

enum class ReportFormat { json, csv, markdown };
ReportFormat parse_report_format(std::string_view name);

/// Markdown renders one table row; `reference` supplies the test-error
/// p-value column.
void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out,
                 const ExperimentReport* reference = nullptr);
/// Throws std::runtime_error when the path cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path, const ExperimentReport* reference = nullptr);

std::string markdown_header();

struct Comparison {
  std::size_t pairs = 0;
  double train_error_p = 1.0;
  double test_error_p = 1.0;
  std::optional<double> ensemble_size_p;
};

/// Paired t-tests between two reports over the same folds. Per-run pairing by
/// (fold, run) by default; `per_fold` pairs fold means instead. Throws
/// std::invalid_argument when the reports cannot be paired.
Comparison compare_reports(const ExperimentReport& a, const ExperimentReport& b,
                           bool per_fold = false);

/// Replaces a continuous target column with class indices: class 0 for
/// v <= t_0, class k for t_{k-1} < v <= t_k, and the last class above every
/// threshold. A header line (non-numeric target cell) is copied through.
void discretize_target(std::istream& in, std::ostream& out, std::span<const double> thresholds,
                       int target_column = -1);

}  // namespace eel
