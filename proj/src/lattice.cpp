#include "korobov/lattice.hpp"

#include <array>

#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  // the first twelve primes are a witness set valid for all n < 3.3e24
  constexpr std::array<std::uint64_t, 12> witnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : witnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : witnesses) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t m) {
  if (m < 2) throw ConfigError(fmt::format("next_prime needs m >= 2, got {}", m));
  std::uint64_t p = m;
  while (!is_prime(p)) {
    if (p == UINT64_MAX) throw CapExceeded("next_prime: no prime below 2^64");
    ++p;
  }
  // Bertrand's postulate
  if (m <= UINT64_MAX / 2 && p >= 2 * m)
    throw CertificateError(fmt::format("next_prime({}) = {} violates p < 2m", m, p));
  return p;
}

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw ConfigError("inverse of zero residue");
  return pow_mod(a, p - 2, p);
}

LatticeRule::LatticeRule(std::uint32_t n, std::vector<std::uint32_t> g) : n_(n), g_(std::move(g)) {
  if (n > kMaxModulus) throw ConfigError(fmt::format("modulus {} exceeds 2^31 - 1", n));
  if (!is_prime(n)) throw ConfigError(fmt::format("modulus {} is not prime", n));
  if (g_.empty()) throw ConfigError("generating vector must have dimension >= 1");
  for (std::uint32_t gj : g_) {
    if (gj >= n) throw ConfigError(fmt::format("generator component {} not in G_{}", gj, n));
  }
}

LatticeRule korobov_vector(const KorobovParam& param) {
  if (param.d == 0) throw ConfigError("Korobov dimension must be >= 1");
  if (param.n < 2 || param.g >= param.n)
    throw ConfigError(fmt::format("Korobov scalar {} not in G_{}", param.g, param.n));
  std::vector<std::uint32_t> g(param.d);
  std::uint64_t power = 1 % param.n;
  for (std::size_t j = 0; j < param.d; ++j) {
    g[j] = static_cast<std::uint32_t>(power);
    power = power * param.g % param.n;
  }
  return LatticeRule(param.n, std::move(g));
}

PointSet points(const LatticeRule& rule) {
  const std::size_t n = rule.n(), d = rule.dim();
  PointSet out(n, d);
  const auto nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto row = out[k];
    for (std::size_t j = 0; j < d; ++j) row[j] = static_cast<double>(rule.residue(k, j)) / nd;
  }
  return out;
}

}  // namespace korobov
