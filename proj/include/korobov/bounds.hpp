#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "korobov/series.hpp"
#include "korobov/weights.hpp"

namespace korobov {

/// general: arbitrary generating vectors in G_N^d (c_d = 1).
/// korobov: Korobov vectors v_d(g) (c_d = d in sample-size bounds, factor
/// d - 1 in the error bound).
enum class BoundVariant { general, korobov };

std::string_view to_string(BoundVariant variant);
BoundVariant bound_variant_from_string(std::string_view name);

/// prod_{j<d} (1 + 2 A_lambda omega^{lambda a_j}), with its logarithm.
/// `overflow` is set when the value is not representable.
struct ProductBound {
  double value = 1.0;
  double log_value = 0.0;
  double a_lambda = 1.0;
  bool overflow = false;
};

ProductBound product_bound(std::size_t d, double lambda, const WeightModel& model, Tolerance tol = {});

/// Existence bound on the best worst-case error at modulus n:
///   (c / n * product)^{1 / (2 lambda)},  c = 1 (general) or d - 1 (korobov).
/// The Korobov bound at d = 1 is taken to be the general one.
struct BoundReport {
  std::uint32_t n = 0;
  std::size_t d = 0;
  double lambda = 1.0;
  double a_lambda = 1.0;
  double product_term = 1.0;
  double bound_value = 0.0;
  BoundVariant variant = BoundVariant::general;
  bool overflow = false;
};

BoundReport error_bound(std::uint32_t n, std::size_t d, double lambda, const WeightModel& model,
                        BoundVariant variant, Tolerance tol = {});

/// error_bound minimized over the lambda grid.
BoundReport min_error_bound(std::uint32_t n, std::size_t d, const WeightModel& model,
                            BoundVariant variant, Tolerance tol = {});

/// {1, 1/2, 1/4, ..., 2^-20}.
std::vector<double> lambda_grid();

/// Minimizes f over the lambda grid, then refines with three golden-section
/// steps between the grid neighbours of the best grid point. Grid points where
/// f throws CapExceeded are skipped. Returns {lambda*, f(lambda*)}.
std::pair<double, double> minimize_over_lambda(const std::function<double(double)>& f);

/// Nonnegative integer that may overflow 2^62; `infinite` tags the overflow.
struct BigCount {
  std::uint64_t value = 0;
  bool infinite = false;
  /// Natural log of the real quantity before rounding up.
  double log_value = 0.0;
};

inline constexpr double kBigCountLimit = 4611686018427387904.0;  // 2^62

/// Rounds exp(log_value) (or `direct` when finite) up to an integer, tagging
/// overflow past 2^62.
BigCount ceil_count(double direct, double log_value);

/// c_d used by the sample-size bounds: 1 (general) or d (korobov).
double sample_size_constant(std::size_t d, BoundVariant variant);

/// M_lambda(eps, d) = ceil(c_d eps^{-2 lambda} product).
BigCount m_lambda(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                  BoundVariant variant, Tolerance tol = {});

/// 4 c_d eps^{-2 lambda} product at one lambda, rounded up.
BigCount info_complexity_bound_at(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                                  BoundVariant variant, Tolerance tol = {});

struct InfoComplexityBound {
  BigCount bound;
  double lambda_star = 1.0;
};

/// info_complexity_bound_at minimized over lambda.
InfoComplexityBound info_complexity_bound(double epsilon, std::size_t d, const WeightModel& model,
                                          BoundVariant variant, Tolerance tol = {});

struct EmpiricalOptions {
  std::uint32_t max_n = 20000;
  unsigned threads = 1;
};

/// Smallest prime N whose best Korobov rule has e <= epsilon. This is an upper
/// bound on the information complexity, found by scanning primes in order.
std::uint32_t empirical_info_complexity(double epsilon, std::size_t d, const WeightModel& model,
                                        Tolerance tol = {}, const EmpiricalOptions& options = {});

}  // namespace korobov
