#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "eel/kernels.hpp"

namespace eel::kernels {
namespace {

Isa detect_default() noexcept {
  if (const char* forced = std::getenv("EEL_KERNELS");
      forced != nullptr && std::string(forced) == "scalar") {
    return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detect_default()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(EEL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel variant not supported here: " +
                                std::string(isa_name(isa)));
  }
  active().store(isa, std::memory_order_relaxed);
}

void activations(std::span<const double> weights, double bias,
                 std::span<const double> columns, std::span<double> out) {
#if defined(EEL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    return avx2::activations(weights, bias, columns, out);
  }
#endif
  scalar::activations(weights, bias, columns, out);
}

std::size_t count_mismatches(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b) {
#if defined(EEL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    return avx2::count_mismatches(a, b);
  }
#endif
  return scalar::count_mismatches(a, b);
}

void accumulate_mismatches(std::span<const std::int32_t> predictions,
                           std::span<const std::int32_t> labels,
                           std::span<std::int32_t> counts) {
#if defined(EEL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) {
    return avx2::accumulate_mismatches(predictions, labels, counts);
  }
#endif
  scalar::accumulate_mismatches(predictions, labels, counts);
}

}  // namespace eel::kernels
