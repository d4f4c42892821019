#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace korobov {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime >= m (m >= 2). Always < 2m.
std::uint64_t next_prime(std::uint64_t m);

/// a * b mod m without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
/// Inverse of a modulo the prime p, a not divisible by p.
std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p);

/// Moduli are limited so that residue products fit comfortably in 64 bits.
inline constexpr std::uint32_t kMaxModulus = 0x7fffffffu;

/// Rank-1 lattice rule with prime modulus n and generating vector g in G_n^d.
class LatticeRule {
 public:
  LatticeRule(std::uint32_t n, std::vector<std::uint32_t> g);

  std::uint32_t n() const { return n_; }
  std::size_t dim() const { return g_.size(); }
  std::span<const std::uint32_t> g() const { return g_; }
  std::uint32_t g(std::size_t j) const { return g_[j]; }

  /// Numerator of coordinate j of point k: k * g_j mod n.
  std::uint32_t residue(std::uint64_t k, std::size_t j) const {
    return static_cast<std::uint32_t>((k % n_) * g_[j] % n_);
  }

  friend bool operator==(const LatticeRule&, const LatticeRule&) = default;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> g_;
};

/// Korobov generator: expands to v_d(g) = (1, g, g^2, ..., g^{d-1}) mod n.
struct KorobovParam {
  std::uint32_t n = 2;
  std::uint32_t g = 1;
  std::size_t d = 1;
};

LatticeRule korobov_vector(const KorobovParam& param);

/// The n points {k g / n}, k = 0..n-1, stored row-major.
class PointSet {
 public:
  PointSet(std::size_t n, std::size_t d) : n_(n), d_(d), coords_(n * d) {}

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::span<const double> operator[](std::size_t k) const { return {coords_.data() + k * d_, d_}; }
  std::span<double> operator[](std::size_t k) { return {coords_.data() + k * d_, d_}; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> coords_;
};

/// Coordinates are formed from the exact integer residue and divided once.
PointSet points(const LatticeRule& rule);

}  // namespace korobov
