#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "korobov/bounds.hpp"
#include "korobov/error.hpp"
#include "korobov/search.hpp"
#include "korobov/series.hpp"
#include "korobov/wce.hpp"

using namespace korobov;

namespace {

WeightModel simple(double omega, double a, double b) {
  return WeightModel(omega, WeightFamily::constant(a), WeightFamily::constant(b));
}

WeightModel linear_model() { return WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0)); }

double prop_product(std::size_t d, double lambda, const WeightModel& m) {
  return product_bound(d, lambda, m).value;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("n = 2, d = 1") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto r = search_korobov(2, 1, m);
    CHECK(r.evaluated == 2);
    // d = 1: both scalars give the vector (1)
    CHECK(*r.best_scalar == 0);
    const auto g = search_general(2, 1, m);
    CHECK(g.best_rule == LatticeRule(2, {1}));
    CHECK(g.best_e2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(wce2_theta_product(LatticeRule(2, {0}), m).value == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("n = 3, d = 2: reflection tie goes to g = 1") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto r = search_korobov(3, 2, m, {}, {.keep_candidates = true});
    CHECK(*r.best_scalar == 1);
    CHECK(r.best_rule == LatticeRule(3, {1, 1}));
    CHECK(std::abs(r.candidates[1].e2 - r.candidates[2].e2) <= 1e-12);
    CHECK(r.ties == 2);
  }

  TEST_CASE("best is no worse than any candidate") {
    const auto m = linear_model();
    const auto r = search_korobov(61, 4, m, {}, {.keep_candidates = true});
    CHECK(r.evaluated == 61);
    for (const auto& c : r.candidates) CHECK(r.best_e2.value <= c.e2 + 1e-13 + c.trunc_bound);
    CHECK(r.best_e2.value <= wce2_theta_product(korobov_vector({61, 1, 4}), m).value);
  }

  TEST_CASE("general search") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto r = search_general(2, 2, m);
    CHECK(r.evaluated == 4);
    CHECK(r.best_rule == LatticeRule(2, {1, 1}));
    const auto m2 = linear_model();
    for (std::uint32_t n : {5u, 7u, 11u}) {
      for (std::size_t d : {1u, 2u, 3u}) {
        const auto gen = search_general(n, d, m2);
        const auto kor = search_korobov(n, d, m2);
        CHECK(gen.best_e2.value <= kor.best_e2.value + 1e-13);
        if (d == 1) CHECK(gen.best_e2.value == doctest::Approx(kor.best_e2.value).epsilon(1e-12));
      }
    }
    CHECK_THROWS_AS(search_general(11, 4, m2), ConfigError);
    CHECK_THROWS_AS(search_general(1009, 2, m2), CapExceeded);
  }

  TEST_CASE("parallel searches are bit-identical to serial ones") {
    const auto m = WeightModel(0.7, WeightFamily::linear(0.5), WeightFamily::constant(0.8));
    const auto serial = search_korobov(211, 5, m, {}, {.keep_candidates = true});
    for (unsigned threads : {2u, 3u, 8u}) {
      SearchOptions o;
      o.threads = threads;
      o.keep_candidates = true;
      const auto par = search_korobov(211, 5, m, {}, o);
      CHECK(par.best_rule == serial.best_rule);
      CHECK(par.best_e2.value == serial.best_e2.value);
      CHECK(par.ties == serial.ties);
      for (std::size_t i = 0; i < par.candidates.size(); ++i) CHECK(par.candidates[i].e2 == serial.candidates[i].e2);
    }
    const auto gs = search_general(13, 3, m);
    SearchOptions o;
    o.threads = 4;
    const auto gp = search_general(13, 3, m, {}, o);
    CHECK(gs.best_rule == gp.best_rule);
    CHECK(gs.best_e2.value == gp.best_e2.value);
  }

  TEST_CASE("dual evaluator finds the same winner") {
    const auto m = linear_model();
    SearchOptions o;
    o.evaluator = WceMethod::dual_enum;
    const auto a = search_korobov(53, 3, m, {}, o);
    const auto b = search_korobov(53, 3, m);
    CHECK(a.best_e2.value == doctest::Approx(b.best_e2.value).epsilon(1e-10));
  }

  TEST_CASE("existence bounds dominate the best errors") {
    for (const auto& m : {linear_model(), simple(0.6, 1.0, 1.0),
                          WeightModel(0.5, WeightFamily::constant(1.0), WeightFamily::constant(0.5))}) {
      for (std::uint32_t n : {7u, 13u, 31u}) {
        for (std::size_t d : {2u, 3u}) {
          const double gen = search_general(n, d, m).best_e2.e();
          const double kor = search_korobov(n, d, m).best_e2.e();
          for (double lambda : lambda_grid()) {
            double p = 0.0;
            try {
              p = prop_product(d, lambda, m);
            } catch (const CapExceeded&) {
              continue;  // slowly decaying series at tiny lambda
            }
            CHECK(gen <= std::pow(p / n, 1.0 / (2.0 * lambda)) * (1.0 + 1e-9));
            CHECK(kor <= std::pow((d - 1.0) * p / n, 1.0 / (2.0 * lambda)) * (1.0 + 1e-9));
          }
        }
      }
    }
  }

  TEST_CASE("averages obey the averaging bounds") {
    const auto m = linear_model();
    for (std::uint32_t n : {5u, 11u, 23u}) {
      for (std::size_t d : {2u, 3u}) {
        for (double lambda : {1.0, 0.5, 0.25}) {
          const double p = prop_product(d, lambda, m);
          CHECK(mean_pow_error(n, d, lambda, m, {}, SearchFamily::general) <= p / n * (1.0 + 1e-12));
          CHECK(mean_pow_error(n, d, lambda, m, {}, SearchFamily::korobov) <= (d - 1.0) * p / n * (1.0 + 1e-12));
        }
      }
    }
    const auto m1 = simple(0.5, 1.0, 1.0);
    CHECK(mean_pow_error(2, 1, 0.5, m1, {}, SearchFamily::korobov) ==
          doctest::Approx(wce2_theta_product(LatticeRule(2, {1}), m1, 0.5).value).epsilon(1e-14));
  }

  TEST_CASE("general average counts multiples of n in every vector") {
    // h in n Z^d solves h . g == 0 for all g, every other nonzero h for a 1/n share
    const auto m = simple(0.5, 1.0, 1.0);
    for (std::uint32_t n : {5u, 13u}) {
      for (std::size_t d : {2u, 3u}) {
        for (double lambda : {1.0, 0.5, 0.25}) {
          const double r = std::pow(0.5, lambda);
          const double rn = std::pow(r, static_cast<double>(n));
          const double all = std::pow(1.0 + 2.0 * r / (1.0 - r), static_cast<double>(d)) - 1.0;
          const double multiples = std::pow(1.0 + 2.0 * rn / (1.0 - rn), static_cast<double>(d)) - 1.0;
          const double expected = (all - multiples) / n + multiples;
          CHECK(mean_pow_error(n, d, lambda, m, Tolerance(1e-15), SearchFamily::general) ==
                doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
    // so the 1/n majorant can be exceeded when omega^{lambda n} is not small
    const double p = prop_product(3, 0.25, m);
    CHECK(mean_pow_error(5, 3, 0.25, m, {}, SearchFamily::general) > p / 5.0);
  }

  TEST_CASE("korobov root count is at most d - 1") {
    std::mt19937_64 rng(17);
    for (std::uint32_t n : {5u, 7u, 11u, 13u, 17u}) {
      for (std::size_t d : {2u, 3u, 4u, 5u}) {
        for (int trial = 0; trial < 40; ++trial) {
          std::vector<std::int64_t> h(d);
          bool nonzero = false;
          for (auto& v : h) {
            v = static_cast<std::int64_t>(rng() % (2 * n - 1)) - static_cast<std::int64_t>(n - 1);
            nonzero = nonzero || v != 0;
          }
          if (!nonzero) continue;
          CHECK(count_korobov_roots(h, n) <= d - 1);
        }
      }
    }
  }
}
