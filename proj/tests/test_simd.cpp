#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "korobov/lattice.hpp"
#include "korobov/simd.hpp"
#include "korobov/wce.hpp"

using namespace korobov;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("cos table") {
    const auto t = simd::symmetric_cos_table(7);
    REQUIRE(t.size() == 7);
    CHECK(t[0] == 1.0);
    for (std::uint32_t r = 1; r < 7; ++r) {
      CHECK(bit_equal(t[r], t[7 - r]));
      CHECK(t[r] == doctest::Approx(std::cos(2.0 * M_PI * r / 7.0)).epsilon(1e-15));
    }
  }

  TEST_CASE("theta kernel: avx2 is bit-identical to scalar") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    std::mt19937_64 rng(5);
    for (std::uint32_t n : {2u, 3u, 5u, 17u, 101u, 1009u, 4099u}) {
      const auto table = simd::symmetric_cos_table(n);
      for (std::size_t H : {1u, 3u, 8u, 40u, 257u}) {
        std::vector<double> coeff(H);
        for (std::size_t h = 0; h < H; ++h) coeff[h] = std::pow(0.7, h + 1.0) * (1.0 + 0.01 * (rng() % 7));
        std::vector<double> a(n), b(n);
        simd::kernels(simd::Isa::scalar).theta_at_fractions(coeff, table, a);
        simd::kernels(simd::Isa::avx2).theta_at_fractions(coeff, table, b);
        for (std::uint32_t r = 0; r < n; ++r) CHECK(bit_equal(a[r], b[r]));
      }
    }
  }

  TEST_CASE("product kernel: avx2 is bit-identical to scalar") {
    if (!simd::isa_available(simd::Isa::avx2)) return;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.5, 3.0);
    for (std::uint32_t n : {2u, 3u, 7u, 257u, 1021u, 65537u}) {
      for (std::size_t d : {1u, 2u, 5u, 9u}) {
        std::vector<std::vector<double>> rows(d, std::vector<double>(n));
        std::vector<const double*> ptr;
        for (auto& row : rows) {
          for (auto& v : row) v = u(rng);
          ptr.push_back(row.data());
        }
        std::vector<std::uint32_t> g(d);
        for (auto& v : g) v = static_cast<std::uint32_t>(rng() % n);
        const double s = simd::kernels(simd::Isa::scalar).lattice_product_sum(ptr, g, n);
        const double v = simd::kernels(simd::Isa::avx2).lattice_product_sum(ptr, g, n);
        CHECK(bit_equal(s, v));
      }
    }
  }

  TEST_CASE("product kernel matches a direct sum") {
    const std::uint32_t n = 13;
    std::vector<double> r0(n), r1(n);
    for (std::uint32_t r = 0; r < n; ++r) {
      r0[r] = 1.0 + r;
      r1[r] = 2.0 - 0.1 * r;
    }
    const std::vector<const double*> ptr{r0.data(), r1.data()};
    const std::vector<std::uint32_t> g{1, 5};
    double direct = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) direct += r0[k] * r1[k * 5 % n];
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2}) {
      if (!simd::isa_available(isa)) continue;
      CHECK(simd::kernels(isa).lattice_product_sum(ptr, g, n) == doctest::Approx(direct).epsilon(1e-15));
    }
  }

  TEST_CASE("default selection is a usable variant") {
    const auto& k = simd::kernels();
    CHECK(simd::isa_available(k.isa));
  }

  TEST_CASE("compensated sum") {
    simd::CompensatedSum s;
    s.add(1.0);
    s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == 1e-16);
  }
}
