#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "korobov/error.hpp"
#include "korobov/lattice.hpp"
#include "korobov/series.hpp"
#include "korobov/wce.hpp"
#include "oracles.hpp"

using namespace korobov;

namespace {

WeightModel simple(double omega, double a, double b) {
  return WeightModel(omega, WeightFamily::constant(a), WeightFamily::constant(b));
}

double combined(const ErrorEstimate& x, const ErrorEstimate& y) { return x.trunc_bound + y.trunc_bound; }

}  // namespace

TEST_SUITE("wce") {
  TEST_CASE("d = 1, N = 2: three methods agree on 2/3") {
    const auto m = simple(0.5, 1.0, 1.0);
    const LatticeRule r(2, {1});
    CHECK(wce2_dual_enum(r, m).value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(wce2_theta_product(r, m).value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(wce2_kernel_double_sum(r, m).value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  }

  TEST_CASE("zero generator makes every frequency dual") {
    const auto m = simple(0.5, 1.0, 1.0);
    CHECK(wce2_dual_enum(LatticeRule(3, {0}), m).value == doctest::Approx(2.0).epsilon(1e-14));
    const auto m2 = WeightModel(0.6, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    const LatticeRule zero(5, {0, 0, 0});
    double prod = 1.0;
    for (std::size_t j = 0; j < 3; ++j) prod *= ThetaSeries(m2, j, 1.0, Tolerance(1e-15)).at_zero();
    CHECK(wce2_theta_product(zero, m2).value == doctest::Approx(prod - 1.0).epsilon(1e-13));
  }

  TEST_CASE("small cross checks") {
    const auto m = simple(0.5, 1.0, 1.0);
    const LatticeRule r(3, {1, 1});
    CHECK(std::abs(wce2_dual_enum(r, m).value - wce2_theta_product(r, m).value) <= 1e-12);

    const auto m3 = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    const LatticeRule r3(13, {1, 5, 8});
    const auto de = wce2_dual_enum(r3, m3), tp = wce2_theta_product(r3, m3);
    CHECK(std::abs(de.value - tp.value) <= combined(de, tp) + 1e-15);

    const LatticeRule r7(7, {1, 3});
    const auto a = wce2_dual_enum(r7, m), b = wce2_theta_product(r7, m), c = wce2_kernel_double_sum(r7, m);
    CHECK(std::abs(a.value - b.value) <= 1e-10);
    CHECK(std::abs(b.value - c.value) <= 1e-10);
    CHECK(c.value >= -c.trunc_bound);
  }

  TEST_CASE("dual enumeration matches a full box sum") {
    const auto m = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    const LatticeRule r(11, {1, 4, 5});
    // box radius 60 leaves a tail below 1e-17 at these weights
    CHECK(std::abs(wce2_dual_enum(r, m).value - oracle::dual_sum_box(11, {1, 4, 5}, m, 60)) <= 1e-13);
  }

  TEST_CASE("randomized three-way agreement") {
    std::mt19937_64 rng(20240917);
    const std::vector<std::uint32_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int trial = 0; trial < 60; ++trial) {
      const std::uint32_t n = primes[rng() % primes.size()];
      const std::size_t d = 1 + rng() % 3;
      const double omega = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
      const double a1 = std::uniform_real_distribution<double>(0.8, 2.0)(rng);
      const double b = std::uniform_real_distribution<double>(0.7, 2.0)(rng);
      const auto m = WeightModel(omega, WeightFamily::linear(a1), WeightFamily::constant(b));
      std::vector<std::uint32_t> g(d);
      for (auto& v : g) v = static_cast<std::uint32_t>(rng() % n);
      const LatticeRule r(n, g);
      const Tolerance tol(1e-13);
      const auto de = wce2_dual_enum(r, m, 1.0, tol);
      const auto tp = wce2_theta_product(r, m, 1.0, tol);
      const auto ks = wce2_kernel_double_sum(r, m, tol);
      CHECK(std::abs(de.value - tp.value) <= combined(de, tp) + 1e-10);
      CHECK(std::abs(tp.value - ks.value) <= combined(tp, ks) + 1e-10);
    }
  }

  TEST_CASE("invariances") {
    const auto m = WeightModel(0.6, WeightFamily::linear(0.8), WeightFamily::constant(1.2));
    const std::uint32_t n = 31;
    const std::vector<std::uint32_t> g{1, 7, 19};
    const double base = wce2_theta_product(LatticeRule(n, g), m).value;
    for (std::uint32_t c = 1; c < n; ++c) {
      std::vector<std::uint32_t> cg(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) cg[j] = static_cast<std::uint32_t>(c * g[j] % n);
      CHECK(std::abs(wce2_theta_product(LatticeRule(n, cg), m).value - base) <= 1e-12);
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      auto neg = g;
      neg[j] = n - g[j];
      CHECK(std::abs(wce2_theta_product(LatticeRule(n, neg), m).value - base) <= 1e-12);
    }
    for (std::uint32_t s = 1; s < n; ++s) {
      const double e1 = wce2_theta_product(korobov_vector({n, s, 4}), m).value;
      const double e2 = wce2_theta_product(korobov_vector({n, n - s, 4}), m).value;
      CHECK(std::abs(e1 - e2) <= 1e-12);
    }
  }

  TEST_CASE("scaled weights dominate the power of the error") {
    const auto m = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    const LatticeRule r(37, {1, 11, 10});
    const double e2 = wce2_dual_enum(r, m).value;
    for (double lambda : {1.0, 0.75, 0.5, 0.25, 0.1}) {
      const double scaled = wce2_dual_enum(r, m, lambda).value;
      CHECK(scaled >= std::pow(e2, lambda) * (1.0 - 1e-12));
      const double scaled_tp = wce2_theta_product(r, m, lambda).value;
      CHECK(scaled_tp == doctest::Approx(scaled).epsilon(1e-10));
    }
  }

  TEST_CASE("appending a zero component cannot decrease the error") {
    const auto m = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    std::vector<std::uint32_t> g{1, 5};
    double prev = wce2_theta_product(LatticeRule(13, g), m).value;
    for (int k = 0; k < 3; ++k) {
      g.push_back(0);
      const double next = wce2_theta_product(LatticeRule(13, g), m).value;
      CHECK(next >= prev - 1e-14);
      prev = next;
    }
  }

  TEST_CASE("dual evaluator keeps relative accuracy for tiny errors") {
    const auto m = simple(0.5, 1.0, 1.0);
    const LatticeRule r(199, {1});
    const double expected = 2.0 * std::pow(0.5, 199) / (1.0 - std::pow(0.5, 199));
    const auto e = wce2_dual_enum(r, m, 1.0, Tolerance(1e-250));
    CHECK(e.value == doctest::Approx(expected).epsilon(1e-13));
    CHECK(e.trunc_bound <= 1e-250);
  }

  TEST_CASE("truncation bounds are honoured") {
    const auto m = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(0.7));
    const LatticeRule r(23, {1, 9});
    const auto loose = wce2_dual_enum(r, m, 1.0, Tolerance(1e-6));
    const auto tight = wce2_dual_enum(r, m, 1.0, Tolerance(1e-14));
    CHECK(loose.trunc_bound <= 1e-6);
    CHECK(std::abs(loose.value - tight.value) <= loose.trunc_bound + tight.trunc_bound);
    CHECK(loose.value <= tight.value);
  }

  TEST_CASE("sum of rho over all nonzero frequencies") {
    const auto m = WeightModel(0.5, WeightFamily::linear(1.0), WeightFamily::constant(1.0));
    const auto s = sum_rho_nonzero(m, 3);
    double prod = 1.0;
    for (std::size_t j = 0; j < 3; ++j) prod *= 1.0 + 2.0 * std::pow(0.5, j + 1.0) / (1.0 - std::pow(0.5, j + 1.0));
    CHECK(std::abs(s.value - (prod - 1.0)) <= s.trunc_bound + 1e-13);
  }

  TEST_CASE("dominant dual frequency") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto f = dominant_dual_frequency(LatticeRule(7, {1, 3}), m);
    // h = +-(1, 2) has the smallest exponent, 3
    CHECK(f.rho == doctest::Approx(std::pow(0.5, 3)).epsilon(1e-14));
    std::int64_t dot = f.h[0] * 1 + f.h[1] * 3;
    CHECK(((dot % 7) + 7) % 7 == 0);
  }

  TEST_CASE("caps") {
    const auto m = simple(0.5, 1.0, 1.0);
    CHECK_THROWS_AS(wce2_kernel_double_sum(LatticeRule(10007, {1}), m), CapExceeded);
    const auto slow = simple(0.95, 0.1, 0.5);
    CHECK_THROWS_AS(wce2_dual_enum(LatticeRule(101, {1, 3, 9, 27}), slow, 1.0, Tolerance(1e-14), 100000),
                    CapExceeded);
  }

  TEST_CASE("flagged when indistinguishable from zero") {
    const auto m = simple(0.5, 1.0, 1.0);
    const auto e = wce2_theta_product(LatticeRule(199, {1}), m);
    CHECK(e.indistinguishable_from_zero());
    CHECK(e.e() >= 0.0);
  }
}
