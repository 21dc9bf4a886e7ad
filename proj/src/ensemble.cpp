#include "eel/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eel {

ClassIndex plurality(std::span<const std::int32_t> votes) noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < votes.size(); ++k) {
    if (votes[k] > votes[best]) {
      best = k;
    }
  }
  return static_cast<ClassIndex>(best);
}

ClassIndex majority_vote(const Ensemble& ensemble, std::span<const double> x) {
  if (ensemble.empty()) {
    throw std::invalid_argument("majority_vote: empty ensemble");
  }
  std::vector<std::int32_t> votes(ensemble.members.front().classes(), 0);
  for (const auto& h : ensemble.members) {
    ++votes[static_cast<std::size_t>(predict(h, x))];
  }
  return plurality(votes);
}

Predictions majority_vote_all(const Ensemble& ensemble, const Dataset& data) {
  if (ensemble.empty()) {
    throw std::invalid_argument("majority_vote: empty ensemble");
  }
  VoteTable table(data.labels(), data.classes());
  for (const auto& h : ensemble.members) {
    table.add(predict_all(h, data));
  }
  Predictions out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = plurality(table.votes(i));
  }
  return out;
}

VoteTable::VoteTable(std::span<const ClassIndex> labels, std::size_t classes)
    : labels_(labels.begin(), labels.end()), votes_(labels.size() * classes, 0), classes_(classes) {
  if (classes < 2) {
    throw std::invalid_argument("vote table: need at least two classes");
  }
}

void VoteTable::add(std::span<const ClassIndex> predictions) {
  if (predictions.size() != labels_.size()) {
    throw std::invalid_argument("vote table: prediction length mismatch");
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    ++votes_[i * classes_ + static_cast<std::size_t>(predictions[i])];
  }
  ++members_;
}

ClassIndex VoteTable::strongest_wrong(std::size_t i) const {
  const auto v = votes(i);
  const auto truth = static_cast<std::size_t>(labels_[i]);
  std::size_t best = truth == 0 ? 1 : 0;
  for (std::size_t k = best + 1; k < classes_; ++k) {
    if (k != truth && v[k] > v[best]) {
      best = k;
    }
  }
  return static_cast<ClassIndex>(best);
}

std::int32_t VoteTable::margin(std::size_t i) const {
  const auto v = votes(i);
  return v[static_cast<std::size_t>(labels_[i])] -
         v[static_cast<std::size_t>(strongest_wrong(i))];
}

std::size_t VoteTable::errors() const {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    wrong += plurality(votes(i)) != labels_[i] ? 1 : 0;
  }
  return wrong;
}

MarginRecord compute_margins(const VoteTable& votes) {
  MarginRecord record;
  record.ensemble_size = votes.members();
  record.margins.resize(votes.examples());
  record.strongest_wrong.resize(votes.examples());
  for (std::size_t i = 0; i < votes.examples(); ++i) {
    record.strongest_wrong[i] = votes.strongest_wrong(i);
    record.margins[i] = votes.margin(i);
  }
  return record;
}

MarginRecord compute_margins(const Ensemble& ensemble, const Dataset& data) {
  if (ensemble.empty()) {
    throw std::invalid_argument("compute_margins: empty ensemble");
  }
  VoteTable table(data.labels(), data.classes());
  for (const auto& h : ensemble.members) {
    table.add(predict_all(h, data));
  }
  return compute_margins(table);
}

std::size_t MarginHistogram::count(long margin) const {
  const long size = static_cast<long>(ensemble_size);
  if (margin < -size || margin > size) {
    return 0;
  }
  return counts[static_cast<std::size_t>(margin + size)];
}

std::size_t MarginHistogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

MarginHistogram margin_histogram(const MarginRecord& record, std::size_t n) {
  if (record.margins.size() != n) {
    throw std::invalid_argument("margin_histogram: record does not cover n examples");
  }
  MarginHistogram hist;
  hist.ensemble_size = record.ensemble_size;
  hist.counts.assign(2 * record.ensemble_size + 1, 0);
  const long size = static_cast<long>(record.ensemble_size);
  for (std::int32_t m : record.margins) {
    if (m < -size || m > size) {
      throw std::invalid_argument("margin_histogram: margin outside [-|L|, |L|]");
    }
    ++hist.counts[static_cast<std::size_t>(m + size)];
  }
  return hist;
}

Preference compare_ensembles(const MarginHistogram& a, const MarginHistogram& b) {
  if (a.ensemble_size != b.ensemble_size || a.counts.size() != b.counts.size()) {
    throw std::invalid_argument("compare_ensembles: histograms are not bin-aligned");
  }
  for (std::size_t bin = 0; bin < a.counts.size(); ++bin) {
    if (a.counts[bin] != b.counts[bin]) {
      return a.counts[bin] < b.counts[bin] ? Preference::first_better
                                           : Preference::second_better;
    }
  }
  return Preference::equal;
}

namespace {

template <typename Less>
std::vector<std::size_t> first_occurrences(std::size_t count, Less less) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < order.size(); ++k) {
    // Stable sort keeps equal keys in index order, so the group head is the
    // first occurrence.
    if (k == 0 || less(order[k - 1], order[k])) {
      kept.push_back(order[k]);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<std::size_t> distinct_genomes(std::span<const Genome> genomes) {
  return first_occurrences(genomes.size(), [&](std::size_t a, std::size_t b) {
    return genomes[a] < genomes[b];
  });
}

std::vector<std::size_t> distinct_predictions(
    std::span<const std::span<const ClassIndex>> predictions) {
  return first_occurrences(predictions.size(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(predictions[a].begin(), predictions[a].end(),
                                        predictions[b].begin(), predictions[b].end());
  });
}

SelectionTrace greedy_selection(std::span<const std::span<const ClassIndex>> candidates,
                                VoteTable votes) {
  const std::size_t n = votes.examples();
  const std::size_t classes = votes.classes();
  for (const auto& c : candidates) {
    if (c.size() != n) {
      throw std::invalid_argument("greedy_selection: prediction length mismatch");
    }
  }

  SelectionTrace trace;
  trace.prefix_errors.push_back(votes.members() == 0 ? kNoEnsemble : votes.errors());

  std::vector<std::size_t> remaining(candidates.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});

  // after[i * K + k]: margin of example i once one more vote goes to class k.
  std::vector<std::int32_t> after(n * classes);
  std::vector<std::size_t> hist;
  std::vector<std::size_t> best_hist;

  while (!remaining.empty()) {
    std::int32_t lo = 0;
    std::int32_t hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = votes.votes(i);
      const auto truth = static_cast<std::size_t>(votes.labels()[i]);
      std::int32_t wrong_max = 0;
      for (std::size_t k = 0; k < classes; ++k) {
        if (k != truth) {
          wrong_max = std::max(wrong_max, v[k]);
        }
      }
      for (std::size_t k = 0; k < classes; ++k) {
        const std::int32_t m = k == truth ? v[truth] + 1 - wrong_max
                                          : v[truth] - std::max(wrong_max, v[k] + 1);
        after[i * classes + k] = m;
        if (i == 0 && k == 0) {
          lo = hi = m;
        } else {
          lo = std::min(lo, m);
          hi = std::max(hi, m);
        }
      }
    }
    const auto width = static_cast<std::size_t>(hi - lo + 1);

    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
      const auto& pred = candidates[remaining[pos]];
      hist.assign(width, 0);
      for (std::size_t i = 0; i < n; ++i) {
        ++hist[static_cast<std::size_t>(after[i * classes + static_cast<std::size_t>(pred[i])] - lo)];
      }
      if (pos == 0) {
        best_hist.swap(hist);
        continue;
      }
      // Strictly better only, so the lowest index survives ties.
      const auto diff = std::mismatch(hist.begin(), hist.end(), best_hist.begin());
      if (diff.first != hist.end() && *diff.first < *diff.second) {
        best_pos = pos;
        best_hist.swap(hist);
      }
    }

    const std::size_t chosen = remaining[best_pos];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    votes.add(candidates[chosen]);
    trace.order.push_back(chosen);
    trace.prefix_errors.push_back(votes.errors());
  }

  std::size_t best = 0;
  for (std::size_t t = 1; t < trace.prefix_errors.size(); ++t) {
    if (trace.prefix_errors[best] == kNoEnsemble ||
        trace.prefix_errors[t] < trace.prefix_errors[best]) {
      best = t;
    }
  }
  trace.chosen = best;
  return trace;
}

Ensemble ensemble_selection(std::span<const LinearClassifier> pool, const Dataset& data,
                            const Ensemble& initial, const SelectionOptions& options) {
  if (pool.empty() && initial.empty()) {
    throw std::invalid_argument("ensemble_selection: empty pool and empty initial ensemble");
  }
  VoteTable votes(data.labels(), data.classes());
  for (const auto& h : initial.members) {
    votes.add(predict_all(h, data));
  }

  std::vector<Predictions> predictions;
  predictions.reserve(pool.size());
  for (const auto& h : pool) {
    predictions.push_back(predict_all(h, data));
  }
  std::vector<std::span<const ClassIndex>> views(predictions.begin(), predictions.end());

  std::vector<std::size_t> kept;
  if (options.dedup == DedupMode::genome) {
    std::vector<Genome> genomes;
    genomes.reserve(pool.size());
    for (const auto& h : pool) {
      genomes.push_back(encode(h));
    }
    kept = distinct_genomes(genomes);
  } else {
    kept = distinct_predictions(views);
  }

  std::vector<std::span<const ClassIndex>> candidates;
  candidates.reserve(kept.size());
  for (std::size_t idx : kept) {
    candidates.push_back(views[idx]);
  }
  const auto trace = greedy_selection(candidates, std::move(votes));

  Ensemble out = initial;
  for (std::size_t t = 0; t < trace.chosen; ++t) {
    out.members.push_back(pool[kept[trace.order[t]]]);
  }
  return out;
}

}  // namespace eel
