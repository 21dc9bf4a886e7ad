#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the build and CPU allow it, an AVX2 version picked at runtime. The
// variants are bit-identical: the double kernels keep the per-row operation
// order of the scalar loop (no FMA, no reassociation), the integer kernels are
// exact by construction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace eel::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// The variant used by the dispatching entry points. Defaults to the best
/// supported one; the environment variable EEL_KERNELS=scalar forces scalar.
Isa active_isa() noexcept;

/// Throws std::invalid_argument when `isa` is not supported on this CPU/build.
void set_active_isa(Isa isa);

/// out[i] = sum_j weights[j] * columns[j * n + i] - bias, with n = out.size()
/// and columns stored feature-major (columns.size() == weights.size() * n).
void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out);

/// Number of positions where a[i] != b[i].
std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b);

/// counts[i] += (predictions[i] != labels[i]).
void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts);

namespace scalar {
void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out);
std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b);
void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts);
}  // namespace scalar

#if defined(EEL_HAVE_AVX2)
namespace avx2 {
void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out);
std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b);
void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts);
}  // namespace avx2
#endif

}  // namespace eel::kernels
