#include <doctest.h>

#include <cmath>
#include <vector>

#include "korobov/bounds.hpp"
#include "korobov/error.hpp"
#include "korobov/lattice.hpp"
#include "korobov/search.hpp"
#include "korobov/wce.hpp"
#include "oracles.hpp"

using namespace korobov;

namespace {

WeightModel simple(double omega, double a, double b) {
  return WeightModel(omega, WeightFamily::constant(a), WeightFamily::constant(b));
}

WeightModel linear_model() { return WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0)); }

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("product bound") {
    const auto m = simple(0.5, 1.0, 1.0);
    CHECK(product_bound(1, 1.0, m).value == doctest::Approx(3.0).epsilon(1e-14));
    for (std::size_t d : {1u, 5u, 40u})
      for (double lambda : {1.0, 0.3, 0.01}) CHECK(product_bound(d, lambda, linear_model()).value >= 1.0);
  }

  TEST_CASE("product bound dominates the full rho sum") {
    for (const auto& m : {linear_model(), simple(0.5, 1.0, 2.0),
                          WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(0.6))}) {
      for (std::size_t d : {1u, 2u, 3u}) {
        const auto s = sum_rho_nonzero(m, d, 1.0, Tolerance(1e-8));
        CHECK(s.value - s.trunc_bound <= product_bound(d, 1.0, m).value);
      }
    }
    // box oracle: every frequency is dual modulo 1
    const auto m = linear_model();
    CHECK(oracle::dual_sum_box(2, {0, 0}, m, 60) <= product_bound(2, 1.0, m).value);
  }

  TEST_CASE("product bound overflow is flagged") {
    const auto m = simple(0.999, 0.01, 1.0);
    const auto p = product_bound(100000, 0.01, m);
    CHECK(p.overflow);
    CHECK(std::isinf(p.value));
    CHECK(std::isfinite(p.log_value));
  }

  TEST_CASE("error bound") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto r = error_bound(3, 2, 1.0, m, BoundVariant::korobov);
    CHECK(r.product_term == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(r.bound_value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    // d = 1 Korobov bound is the general one
    CHECK(error_bound(7, 1, 0.5, m, BoundVariant::korobov).bound_value ==
          error_bound(7, 1, 0.5, m, BoundVariant::general).bound_value);
    for (std::size_t d : {2u, 4u, 8u}) {
      const auto best = min_error_bound(101, d, linear_model(), BoundVariant::korobov);
      CHECK(best.bound_value <= error_bound(101, d, 1.0, linear_model(), BoundVariant::korobov).bound_value);
      CHECK(best.lambda > 0.0);
      CHECK(best.lambda <= 1.0);
    }
  }

  TEST_CASE("error bound is nonincreasing in n") {
    double prev = INFINITY;
    for (std::uint32_t n = 2; n < 2000; n = static_cast<std::uint32_t>(next_prime(n + 1))) {
      const double v = min_error_bound(n, 3, linear_model(), BoundVariant::korobov).bound_value;
      CHECK(v <= prev * (1.0 + 1e-12));
      prev = v;
    }
  }

  TEST_CASE("lambda grid") {
    const auto grid = lambda_grid();
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == std::ldexp(1.0, -20));
    const auto [x, fx] = minimize_over_lambda([](double l) { return (l - 0.3) * (l - 0.3); });
    CHECK(fx <= 0.05 * 0.05);
    CHECK(std::abs(x - 0.3) < 0.25);
  }

  TEST_CASE("sample sizes") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto M = m_lambda(0.5, 1, 1.0, m, BoundVariant::general);
    CHECK(M.value == 12);
    CHECK(next_prime(M.value) == 13);
    CHECK(info_complexity_bound_at(0.5, 1, 1.0, m, BoundVariant::general).value == 48);
    const auto b = info_complexity_bound(0.5, 1, m, BoundVariant::general);
    CHECK(b.bound.value <= 48);
    CHECK(b.bound.value >= 1);
  }

  TEST_CASE("sample size is nonincreasing in epsilon") {
    std::uint64_t prev = UINT64_MAX;
    for (double eps : {0.001, 0.01, 0.05, 0.1, 0.3, 0.6, 0.9}) {
      const auto M = m_lambda(eps, 3, 0.5, linear_model(), BoundVariant::korobov);
      CHECK(M.value <= prev);
      prev = M.value;
    }
  }

  TEST_CASE("Bertrand sandwich") {
    for (double eps : {0.3, 0.01, 1e-4}) {
      for (std::size_t d : {1u, 3u, 10u}) {
        for (double lambda : {1.0, 0.5, 0.125}) {
          const auto M = m_lambda(eps, d, lambda, linear_model(), BoundVariant::korobov);
          REQUIRE_FALSE(M.infinite);
          const auto N = next_prime(M.value);
          CHECK(N >= M.value);
          CHECK(N < 2 * M.value);
        }
      }
    }
  }

  TEST_CASE("overflowing sample sizes are tagged") {
    const auto M = m_lambda(1e-300, 50, 1.0, simple(0.99, 0.1, 1.0), BoundVariant::korobov);
    CHECK(M.infinite);
    CHECK(M.log_value > std::log(kBigCountLimit));
  }

  TEST_CASE("the sample size guarantees the error") {
    const auto m = linear_model();
    for (double eps : {0.3, 0.1, 0.03}) {
      for (std::size_t d : {1u, 2u, 3u}) {
        const auto M = m_lambda(eps, d, 1.0, m, BoundVariant::korobov);
        const auto N = static_cast<std::uint32_t>(next_prime(M.value));
        CHECK(search_korobov(N, d, m).best_e2.e() <= eps);
      }
    }
  }

  TEST_CASE("empirical information complexity") {
    const auto m = simple(0.5, 1.0, 1.0);
    CHECK(empirical_info_complexity(0.82, 1, m) == 2);
    CHECK(empirical_info_complexity(0.8, 1, m) == 3);
    const auto lm = linear_model();
    std::uint32_t prev = 0;
    for (double eps : {0.3, 0.1, 0.03, 0.01}) {
      const auto n = empirical_info_complexity(eps, 3, lm);
      CHECK(n >= prev);
      prev = n;
      // chain: empirical <= 2 M_lambda <= info bound at the same lambda
      for (double lambda : lambda_grid()) {
        const auto M = m_lambda(eps, 3, lambda, lm, BoundVariant::korobov);
        const auto B = info_complexity_bound_at(eps, 3, lambda, lm, BoundVariant::korobov);
        CHECK(std::log(static_cast<double>(n)) <= std::log(2.0) + M.log_value);
        CHECK(M.log_value + std::log(2.0) <= B.log_value + 1e-12);
        if (!M.infinite) CHECK(n <= 2 * M.value);
        if (!B.infinite) CHECK(2 * M.value <= B.value);
      }
    }
    EmpiricalOptions small;
    small.max_n = 50;
    CHECK_THROWS_AS(empirical_info_complexity(1e-9, 3, lm, {}, small), CapExceeded);
  }
}
