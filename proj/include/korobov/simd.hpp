#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops of the worst-case-error evaluation. Every kernel
// has a portable scalar reference in `scalar::` and an x86-64 AVX2 variant in
// `avx2::`; `kernels()` picks one at first use from the CPU features, or from
// the environment variable KOROBOV_SIMD (scalar | avx2 | auto).
//
// Both variants perform the same floating-point operations in the same order
// per output element, so their results are bit-identical.
namespace korobov::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// cos(2 pi m / n) for m in [0, n), with table[n - m] == table[m] exactly.
std::vector<double> symmetric_cos_table(std::uint32_t n);

/// out[r] = 1 + 2 sum_{h=1}^{H} coeff[h-1] * cos_table[(h r) mod n] for r in
/// [0, n), where n = cos_table.size() = out.size(). Terms are accumulated from
/// h = H down to 1. Only r <= n/2 is computed; the rest is mirrored.
using ThetaAtFractionsFn = void (*)(std::span<const double> coeff, std::span<const double> cos_table,
                                    std::span<double> out);

/// sum_{k=0}^{n-1} prod_j tables[j][k g_j mod n], each table of length n.
/// Products are formed in coordinate order; the k-sum is compensated
/// (Neumaier) and runs in increasing k.
using LatticeProductSumFn = double (*)(std::span<const double* const> tables,
                                       std::span<const std::uint32_t> g, std::uint32_t n);

struct Kernels {
  Isa isa;
  ThetaAtFractionsFn theta_at_fractions;
  LatticeProductSumFn lattice_product_sum;
};

bool isa_available(Isa isa);
/// Kernels for a specific ISA; throws ConfigError if the CPU lacks it.
const Kernels& kernels(Isa isa);
/// Kernels selected for this process.
const Kernels& kernels();

namespace scalar {
void theta_at_fractions(std::span<const double> coeff, std::span<const double> cos_table,
                        std::span<double> out);
double lattice_product_sum(std::span<const double* const> tables, std::span<const std::uint32_t> g,
                           std::uint32_t n);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void theta_at_fractions(std::span<const double> coeff, std::span<const double> cos_table,
                        std::span<double> out);
double lattice_product_sum(std::span<const double* const> tables, std::span<const std::uint32_t> g,
                           std::uint32_t n);
}  // namespace avx2
#endif

/// Block length used by the product-sum kernels.
inline constexpr std::size_t kProductBlock = 256;

/// Neumaier-compensated running sum shared by all variants.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace korobov::simd
