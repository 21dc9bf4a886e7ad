#include "eel/kernels.hpp"

#include <immintrin.h>

namespace eel::kernels::avx2 {

void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t d = weights.size();
  const double* cols = columns.data();
  const __m256d vbias = _mm256_set1_pd(bias);

  std::size_t i = 0;
  // Two row blocks per iteration; each lane still sees the scalar order
  // acc = acc + w_j * x_ij for j = 0..d-1.
  for (; i + 8 <= n; i += 8) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < d; ++j) {
      const __m256d w = _mm256_set1_pd(weights[j]);
      const double* col = cols + j * n + i;
      acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(w, _mm256_loadu_pd(col)));
      acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(w, _mm256_loadu_pd(col + 4)));
    }
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(acc0, vbias));
    _mm256_storeu_pd(out.data() + i + 4, _mm256_sub_pd(acc1, vbias));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < d; ++j) {
      const __m256d w = _mm256_set1_pd(weights[j]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(w, _mm256_loadu_pd(cols + j * n + i)));
    }
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(acc, vbias));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      acc = acc + weights[j] * cols[j * n + i];
    }
    out[i] = acc - bias;
  }
}

std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  // Each lane counts equal entries as -1 (cmpeq gives all ones); the lane
  // totals stay far below 2^31 for any block we process.
  std::size_t equal = 0;
  constexpr std::size_t block = std::size_t{1} << 28;
  while (i + 8 <= n) {
    __m256i acc = _mm256_setzero_si256();
    const std::size_t stop = (n - i) / 8 * 8 > block ? i + block : i + (n - i) / 8 * 8;
    for (; i < stop; i += 8) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
      acc = _mm256_sub_epi32(acc, _mm256_cmpeq_epi32(va, vb));
    }
    alignas(32) std::int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (std::int32_t lane : lanes) {
      equal += static_cast<std::size_t>(lane);
    }
  }
  std::size_t mismatches = i - equal;
  for (; i < n; ++i) {
    mismatches += a[i] != b[i] ? 1 : 0;
  }
  return mismatches;
}

void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts) {
  const std::size_t n = predictions.size();
  const __m256i ones = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i vp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(predictions.data() + i));
    const __m256i vl = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(labels.data() + i));
    const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data() + i));
    // andnot(eq, 1) is 1 exactly where the entries differ.
    const __m256i miss = _mm256_andnot_si256(_mm256_cmpeq_epi32(vp, vl), ones);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data() + i), _mm256_add_epi32(vc, miss));
  }
  for (; i < n; ++i) {
    counts[i] += predictions[i] != labels[i] ? 1 : 0;
  }
}

}  // namespace eel::kernels::avx2
