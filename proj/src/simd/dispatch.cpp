#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "korobov/error.hpp"
#include "korobov/simd.hpp"

namespace korobov::simd {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::vector<double> symmetric_cos_table(std::uint32_t n) {
  std::vector<double> table(n);
  for (std::uint32_t m = 0; m <= n / 2; ++m) {
    const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / n);
    table[m] = c;
    if (m != 0) table[n - m] = c;
  }
  return table;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

constexpr Kernels kScalar{Isa::scalar, &scalar::theta_at_fractions, &scalar::lattice_product_sum};
#if defined(__x86_64__)
constexpr Kernels kAvx2{Isa::avx2, &avx2::theta_at_fractions, &avx2::lattice_product_sum};
#endif

Isa select_isa() {
  const char* env = std::getenv("KOROBOV_SIMD");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return Isa::scalar;
  if (choice == "avx2") {
    if (!isa_available(Isa::avx2)) throw ConfigError("KOROBOV_SIMD=avx2 but the CPU lacks AVX2");
    return Isa::avx2;
  }
  if (choice != "auto" && !choice.empty())
    throw ConfigError(fmt::format("KOROBOV_SIMD must be scalar, avx2 or auto, got '{}'", choice));
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

const Kernels& kernels(Isa isa) {
  if (!isa_available(isa))
    throw ConfigError(fmt::format("instruction set {} not available", to_string(isa)));
#if defined(__x86_64__)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const Kernels& kernels() {
  static const Kernels& selected = kernels(select_isa());
  return selected;
}

}  // namespace korobov::simd
