#include <array>

#include "korobov/simd.hpp"

namespace korobov::simd::scalar {

void theta_at_fractions(std::span<const double> coeff, std::span<const double> cos_table,
                        std::span<double> out) {
  const auto n = static_cast<std::uint32_t>(cos_table.size());
  const std::size_t H = coeff.size();
  const std::uint32_t half = n / 2;
  for (std::uint32_t r = 0; r <= half; ++r) {
    std::int64_t idx = static_cast<std::int64_t>((H % n) * r % n);
    double acc = 0.0;
    for (std::size_t h = H; h >= 1; --h) {
      acc = acc + coeff[h - 1] * cos_table[static_cast<std::size_t>(idx)];
      idx -= r;
      if (idx < 0) idx += n;
    }
    out[r] = 1.0 + 2.0 * acc;
  }
  for (std::uint32_t r = half + 1; r < n; ++r) out[r] = out[n - r];
}

double lattice_product_sum(std::span<const double* const> tables, std::span<const std::uint32_t> g,
                           std::uint32_t n) {
  std::array<double, kProductBlock> buf;
  CompensatedSum total;
  for (std::uint64_t k0 = 0; k0 < n; k0 += kProductBlock) {
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kProductBlock, n - k0));
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double* table = tables[j];
      std::uint32_t idx = static_cast<std::uint32_t>(k0 * g[j] % n);
      const std::uint32_t step = g[j];
      if (j == 0) {
        for (std::size_t i = 0; i < len; ++i) {
          buf[i] = table[idx];
          idx += step;
          if (idx >= n) idx -= n;
        }
      } else {
        for (std::size_t i = 0; i < len; ++i) {
          buf[i] *= table[idx];
          idx += step;
          if (idx >= n) idx -= n;
        }
      }
    }
    for (std::size_t i = 0; i < len; ++i) total.add(buf[i]);
  }
  return total.value();
}

}  // namespace korobov::simd::scalar
