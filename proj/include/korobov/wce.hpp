#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "korobov/lattice.hpp"
#include "korobov/series.hpp"
#include "korobov/weights.hpp"

namespace korobov {

enum class WceMethod { dual_enum, theta_product, kernel_double_sum };

std::string_view to_string(WceMethod method);
WceMethod wce_method_from_string(std::string_view name);

/// Squared worst-case error e^2 of a lattice rule with its certified
/// truncation error.
struct ErrorEstimate {
  double value = 0.0;
  double trunc_bound = 0.0;
  WceMethod method = WceMethod::theta_product;

  double e() const { return std::sqrt(value > 0.0 ? value : 0.0); }
  /// The error cannot be told apart from zero at the current tolerance.
  bool indistinguishable_from_zero() const { return value < trunc_bound; }
};

/// theta_j(r / n) for r in [0, n) and every coordinate j < d, at weights
/// lambda * a_j. Coordinates with equal (a_j, b_j) share one table. Read-only
/// after construction.
class ThetaTable {
 public:
  ThetaTable(const WeightModel& model, std::uint32_t n, std::size_t dim, double lambda,
             Tolerance tol);

  std::uint32_t n() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  double lambda() const { return lambda_; }
  std::span<const double> row(std::size_t coord) const { return {rows_[coord], n_}; }
  std::span<const double* const> rows() const { return rows_; }
  /// Error bound of any product prod_j row(j)[r_j].
  double trunc_bound() const { return trunc_; }
  /// prod_j theta_j(0).
  double product_at_zero() const { return product_at_zero_; }

 private:
  std::uint32_t n_;
  double lambda_;
  std::vector<std::vector<double>> storage_;
  std::vector<const double*> rows_;
  double trunc_ = 0.0;
  double product_at_zero_ = 1.0;
};

/// Default node cap for dual-lattice enumeration; KOROBOV_MAX_ENUM overrides.
std::uint64_t enum_node_cap();

/// Truncation region {h : sum_j lambda a_j |h_j|^{b_j} <= threshold} whose
/// complement carries total rho-mass at most tail_bound (<= tol). The bound is
/// omega^{(1-s) T} prod_j theta_j(0; s lambda), minimized over a few s.
struct DualRegion {
  double threshold = 0.0;
  double tail_bound = 0.0;
};

DualRegion dual_region(const WeightModel& model, std::size_t dim, double lambda, Tolerance tol);

/// Visits every nonzero h in the region with h . g == 0 (mod modulus), passing
/// h and its rho exponent. modulus == 1 visits the whole region. The last
/// coordinate is solved from the congruence instead of being scanned.
/// Throws CapExceeded once more than max_nodes nodes have been visited.
using DualVisitor = std::function<void(std::span<const std::int64_t> h, double exponent)>;
std::uint64_t enumerate_dual(std::span<const std::uint32_t> g, std::uint32_t modulus,
                             const WeightModel& model, double lambda, double threshold,
                             const DualVisitor& visit, std::uint64_t max_nodes = enum_node_cap());

/// e^2 (at weights lambda a_j) as the rho-sum over the dual lattice.
ErrorEstimate wce2_dual_enum(const LatticeRule& rule, const WeightModel& model, double lambda = 1.0,
                             Tolerance tol = {}, std::uint64_t max_nodes = enum_node_cap());

/// e^2 = -1 + (1/n) sum_k prod_j theta_j({k g_j / n}).
ErrorEstimate wce2_theta_product(const LatticeRule& rule, const WeightModel& model, double lambda = 1.0,
                                 Tolerance tol = {});
ErrorEstimate wce2_theta_product(const LatticeRule& rule, const ThetaTable& table);

/// e^2 = -1 + (1/n^2) sum_{k,l} K(x_k, x_l), lambda = 1. Requires n^2 <= 1e8.
ErrorEstimate wce2_kernel_double_sum(const LatticeRule& rule, const WeightModel& model,
                                     Tolerance tol = {});

/// sum_{h != 0} rho_lambda(h) over all of Z^d, by enumeration.
CertifiedValue sum_rho_nonzero(const WeightModel& model, std::size_t dim, double lambda = 1.0,
                               Tolerance tol = {}, std::uint64_t max_nodes = enum_node_cap());

/// Dual frequency with the largest rho (smallest exponent); the first found
/// in enumeration order wins ties.
struct DualFrequency {
  std::vector<std::int64_t> h;
  double rho = 0.0;
};
DualFrequency dominant_dual_frequency(const LatticeRule& rule, const WeightModel& model,
                                      std::uint64_t max_nodes = enum_node_cap());

}  // namespace korobov
