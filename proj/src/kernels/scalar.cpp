#include "eel/kernels.hpp"

namespace eel::kernels::scalar {

void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      acc = acc + weights[j] * columns[j * n + i];
    }
    out[i] = acc - bias;
  }
}

std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count += a[i] != b[i] ? 1 : 0;
  }
  return count;
}

void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts) {
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    counts[i] += predictions[i] != labels[i] ? 1 : 0;
  }
}

}  // namespace eel::kernels::scalar
