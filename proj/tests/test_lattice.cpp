#include <doctest.h>

#include <set>
#include <vector>

#include "korobov/error.hpp"
#include "korobov/lattice.hpp"
#include "oracles.hpp"

using namespace korobov;

TEST_SUITE("lattice") {
  TEST_CASE("korobov vector examples") {
    CHECK(korobov_vector({7, 3, 4}).g()[3] == 6);
    CHECK(korobov_vector({7, 3, 4}) == LatticeRule(7, {1, 3, 2, 6}));
    CHECK(korobov_vector({5, 1, 3}) == LatticeRule(5, {1, 1, 1}));
    CHECK(korobov_vector({2, 0, 2}) == LatticeRule(2, {1, 0}));
  }

  TEST_CASE("korobov vector near the modulus cap") {
    const std::uint32_t n = 2147483647u;  // 2^31 - 1 is prime
    const auto r = korobov_vector({n, n - 1, 4});
    CHECK(r.g(1) == n - 1);
    CHECK(r.g(2) == 1);
    CHECK(r.g(3) == n - 1);
  }

  TEST_CASE("points examples") {
    const auto p = points(LatticeRule(2, {1, 1}));
    REQUIRE(p.size() == 2);
    CHECK(p[0][0] == 0.0);
    CHECK(p[1][0] == 0.5);
    CHECK(p[1][1] == 0.5);
    const auto q = points(LatticeRule(5, {1, 2}));
    const double expected[5][2] = {{0, 0}, {0.2, 0.4}, {0.4, 0.8}, {0.6, 0.2}, {0.8, 0.6}};
    for (int k = 0; k < 5; ++k) {
      CHECK(q[k][0] == expected[k][0]);
      CHECK(q[k][1] == expected[k][1]);
    }
    const auto z = points(LatticeRule(3, {0, 1}));
    for (int k = 0; k < 3; ++k) CHECK(z[k][0] == 0.0);
  }

  TEST_CASE("points are distinct when g is nonzero") {
    const LatticeRule r(101, {0, 17, 0});
    const auto p = points(r);
    std::set<std::vector<double>> seen;
    for (std::size_t k = 0; k < p.size(); ++k) seen.insert({p[k].begin(), p[k].end()});
    CHECK(seen.size() == 101);
  }

  TEST_CASE("rule validation") {
    CHECK_THROWS_AS(LatticeRule(6, {1}), ConfigError);
    CHECK_THROWS_AS(LatticeRule(7, {7}), ConfigError);
    CHECK_THROWS_AS(LatticeRule(7, {}), ConfigError);
    CHECK_THROWS_AS(LatticeRule(1, {0}), ConfigError);
  }

  TEST_CASE("next prime examples") {
    CHECK(next_prime(8) == 11);
    CHECK(next_prime(7919) == 7919);
    CHECK(oracle::prime_by_trial_division(7919));
    CHECK(next_prime(2) == 2);
    CHECK_THROWS_AS(next_prime(1), ConfigError);
  }

  TEST_CASE("primality agrees with trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::prime_by_trial_division(n));
    for (std::uint64_t n = 4294967000ull; n < 4294967400ull; ++n)
      CHECK(is_prime(n) == oracle::prime_by_trial_division(n));
  }

  TEST_CASE("primality on hard 64-bit inputs") {
    CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ull));        // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ull));
    CHECK_FALSE(is_prime(341550071728321ull));
  }

  TEST_CASE("next prime leaves no prime behind") {
    for (std::uint64_t m = 2; m < 3000; m += 7) {
      const auto p = next_prime(m);
      CHECK(p < 2 * m);
      CHECK(oracle::prime_by_trial_division(p));
      for (std::uint64_t q = m; q < p; ++q) CHECK_FALSE(oracle::prime_by_trial_division(q));
    }
  }

  TEST_CASE("modular helpers") {
    CHECK(mul_mod(2147483646ull, 2147483646ull, 2147483647ull) == 1);
    for (std::uint64_t a = 1; a < 101; ++a) CHECK(mul_mod(a, inverse_mod_prime(a, 101), 101) == 1);
  }
}
