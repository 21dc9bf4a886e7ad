#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "eel/classifiers.hpp"
#include "eel/dataset.hpp"

namespace eel {

/// Ordered classifier list; insertion order is selection order.
struct Ensemble {
  std::vector<LinearClassifier> members;

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
};

/// Class with the most votes, lowest index on ties.
ClassIndex plurality(std::span<const std::int32_t> votes) noexcept;

/// Throws std::invalid_argument for an empty ensemble.
ClassIndex majority_vote(const Ensemble& ensemble, std::span<const double> x);
Predictions majority_vote_all(const Ensemble& ensemble, const Dataset& data);

/// Per-example, per-class vote counts of an ensemble over a fixed example set.
class VoteTable {
 public:
  VoteTable(std::span<const ClassIndex> labels, std::size_t classes);

  /// Adds one member given its predictions on the examples.
  void add(std::span<const ClassIndex> predictions);

  std::size_t members() const noexcept { return members_; }
  std::size_t examples() const noexcept { return labels_.size(); }
  std::size_t classes() const noexcept { return classes_; }
  std::span<const ClassIndex> labels() const noexcept { return labels_; }

  std::span<const std::int32_t> votes(std::size_t i) const {
    return {votes_.data() + i * classes_, classes_};
  }
  /// Most-voted wrong class of example i, lowest index on ties.
  ClassIndex strongest_wrong(std::size_t i) const;
  std::int32_t margin(std::size_t i) const;
  /// Examples the majority vote gets wrong.
  std::size_t errors() const;

 private:
  std::vector<ClassIndex> labels_;
  std::vector<std::int32_t> votes_;
  std::size_t classes_ = 0;
  std::size_t members_ = 0;
};

struct MarginRecord {
  std::size_t ensemble_size = 0;
  std::vector<std::int32_t> margins;
  std::vector<ClassIndex> strongest_wrong;
};

MarginRecord compute_margins(const VoteTable& votes);
/// Throws std::invalid_argument for an empty ensemble.
MarginRecord compute_margins(const Ensemble& ensemble, const Dataset& data);

/// Number of examples at each margin m in [-size, size].
struct MarginHistogram {
  std::size_t ensemble_size = 0;
  std::vector<std::size_t> counts;  // counts[m + ensemble_size]

  std::size_t count(long margin) const;
  std::size_t total() const noexcept;
};

/// Throws std::invalid_argument when a margin lies outside [-size, size] or
/// the record does not describe n examples.
MarginHistogram margin_histogram(const MarginRecord& record, std::size_t n);

enum class Preference { first_better, second_better, equal };

/// Scans margins upwards from -size; at the first bin where the counts differ
/// the histogram with fewer examples is better. Throws std::invalid_argument
/// when the histograms are not bin-aligned (different ensemble sizes).
Preference compare_ensembles(const MarginHistogram& a, const MarginHistogram& b);

enum class DedupMode { genome, phenotype };

struct SelectionOptions {
  DedupMode dedup = DedupMode::genome;
};

/// Indices of the first occurrence of every distinct genome, ascending.
std::vector<std::size_t> distinct_genomes(std::span<const Genome> genomes);
/// Same for prediction vectors.
std::vector<std::size_t> distinct_predictions(std::span<const std::span<const ClassIndex>> predictions);

inline constexpr std::size_t kNoEnsemble = std::numeric_limits<std::size_t>::max();

struct SelectionTrace {
  /// Candidate indices in the order they were moved into the ensemble.
  std::vector<std::size_t> order;
  /// Training errors (misclassified counts) of the prefixes L_0 .. L_T;
  /// kNoEnsemble for an empty L_0.
  std::vector<std::size_t> prefix_errors;
  /// Candidates in the returned prefix (lowest error, then smallest).
  std::size_t chosen = 0;
};

/// Greedy margin-histogram selection. Moves every candidate into the ensemble
/// described by `votes`, each time the one whose addition gives the best
/// histogram (lowest candidate index on ties), then picks the prefix with the
/// fewest training errors, smallest on ties. Each step costs
/// O(remaining * (n + margin range)).
SelectionTrace greedy_selection(std::span<const std::span<const ClassIndex>> candidates,
                                VoteTable votes);

/// Deduplicates the pool, runs the greedy selection starting from `initial`
/// and returns `initial` followed by the chosen prefix of the pool. Throws
/// std::invalid_argument when both the pool and `initial` are empty.
Ensemble ensemble_selection(std::span<const LinearClassifier> pool, const Dataset& data,
                            const Ensemble& initial, const SelectionOptions& options = {});

}  // namespace eel
