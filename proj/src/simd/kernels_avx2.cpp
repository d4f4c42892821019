#if defined(__x86_64__)

#include <immintrin.h>

#include <algorithm>
#include <array>

#include "korobov/simd.hpp"

// Compiled with per-function target attributes so the rest of the library
// stays baseline x86-64. FMA is deliberately not enabled: mul followed by add
// rounds exactly like the scalar reference.
#define KOROBOV_AVX2 __attribute__((target("avx2")))

namespace korobov::simd::avx2 {

KOROBOV_AVX2 void theta_at_fractions(std::span<const double> coeff, std::span<const double> cos_table,
                                     std::span<double> out) {
  const auto n = static_cast<std::uint32_t>(cos_table.size());
  const std::size_t H = coeff.size();
  const std::uint32_t half = n / 2;
  const double* table = cos_table.data();
  const __m128i nvec = _mm_set1_epi32(static_cast<int>(n));
  const __m128i zero = _mm_setzero_si128();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  for (std::uint32_t r0 = 0; r0 <= half; r0 += 4) {
    alignas(16) std::array<int, 4> start{}, step{};
    for (int lane = 0; lane < 4; ++lane) {
      // lanes past the end recompute r = 0 and are discarded
      const std::uint32_t r = r0 + lane <= half ? r0 + lane : 0;
      step[lane] = static_cast<int>(r);
      start[lane] = static_cast<int>((H % n) * r % n);
    }
    __m128i idx = _mm_load_si128(reinterpret_cast<const __m128i*>(start.data()));
    const __m128i stepv = _mm_load_si128(reinterpret_cast<const __m128i*>(step.data()));
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t h = H; h >= 1; --h) {
      const __m256d c = _mm256_set1_pd(coeff[h - 1]);
      const __m256d cv = _mm256_i32gather_pd(table, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, cv));
      idx = _mm_sub_epi32(idx, stepv);
      idx = _mm_add_epi32(idx, _mm_and_si128(_mm_cmpgt_epi32(zero, idx), nvec));
    }
    alignas(32) std::array<double, 4> res;
    _mm256_store_pd(res.data(), _mm256_add_pd(one, _mm256_mul_pd(two, acc)));
    for (std::uint32_t lane = 0; lane < 4 && r0 + lane <= half; ++lane) out[r0 + lane] = res[lane];
  }
  for (std::uint32_t r = half + 1; r < n; ++r) out[r] = out[n - r];
}

KOROBOV_AVX2 double lattice_product_sum(std::span<const double* const> tables,
                                        std::span<const std::uint32_t> g, std::uint32_t n) {
  // index arithmetic below is signed 32-bit; 2n must not overflow it
  if (n >= (1u << 30)) return scalar::lattice_product_sum(tables, g, n);
  alignas(32) std::array<double, kProductBlock> buf;
  CompensatedSum total;
  const __m128i nvec = _mm_set1_epi32(static_cast<int>(n));
  const __m128i nm1 = _mm_set1_epi32(static_cast<int>(n) - 1);

  for (std::uint64_t k0 = 0; k0 < n; k0 += kProductBlock) {
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kProductBlock, n - k0));
    const std::size_t vec_len = len & ~std::size_t{3};
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double* table = tables[j];
      const std::uint64_t gj = g[j];
      alignas(16) std::array<int, 4> start;
      for (int lane = 0; lane < 4; ++lane) start[lane] = static_cast<int>((k0 + lane) * gj % n);
      __m128i idx = _mm_load_si128(reinterpret_cast<const __m128i*>(start.data()));
      const __m128i step = _mm_set1_epi32(static_cast<int>(4 * gj % n));
      for (std::size_t i = 0; i < vec_len; i += 4) {
        const __m256d v = _mm256_i32gather_pd(table, idx, 8);
        if (j == 0) _mm256_store_pd(buf.data() + i, v);
        else _mm256_store_pd(buf.data() + i, _mm256_mul_pd(_mm256_load_pd(buf.data() + i), v));
        idx = _mm_add_epi32(idx, step);
        idx = _mm_sub_epi32(idx, _mm_and_si128(_mm_cmpgt_epi32(idx, nm1), nvec));
      }
      std::uint32_t sidx = static_cast<std::uint32_t>((k0 + vec_len) * gj % n);
      for (std::size_t i = vec_len; i < len; ++i) {
        if (j == 0) buf[i] = table[sidx];
        else buf[i] *= table[sidx];
        sidx += static_cast<std::uint32_t>(gj);
        if (sidx >= n) sidx -= n;
      }
    }
    for (std::size_t i = 0; i < len; ++i) total.add(buf[i]);
  }
  return total.value();
}

}  // namespace korobov::simd::avx2

#endif
