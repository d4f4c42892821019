#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "korobov/weights.hpp"

namespace korobov {

/// Maximum absolute truncation error permitted for any infinite-sum evaluation.
struct Tolerance {
  double abs_tol = 1e-14;

  Tolerance() = default;
  explicit Tolerance(double tol);
};

/// A value together with a rigorous bound on its truncation error.
struct CertifiedValue {
  double value = 0.0;
  double trunc_bound = 0.0;
};

/// Hard cap on the number of terms of any one-dimensional sum.
inline constexpr std::size_t kMaxSeriesTerms = 10'000'000;

/// Truncated series of omega^{scale * (h^power - offset)}, h = 1..H, where H is
/// the smallest length whose certified tail is below the requested bound.
///
/// Tail certificates:
///  - power >= 1: h^p - H^p >= h - H for h > H, so the tail is at most
///    term(H) * q / (1 - q) with q = omega^scale.
///  - power < 1: on the dyadic block (2^k H, 2^{k+1} H] every term is at most
///    omega^{scale (2^k H)^p}, and the block has 2^k H terms. The block bounds
///    have decreasing ratios, so once a ratio r drops below 1/2 the remainder
///    is at most (last block) * r / (1 - r).
class DecaySeries {
 public:
  static DecaySeries build(double log_omega, double scale, double power, double tail_tol,
                           double offset = 0.0);

  std::span<const double> terms() const { return terms_; }
  double tail_bound() const { return tail_; }
  /// Sum of the retained terms, accumulated smallest first.
  double sum() const { return sum_; }

 private:
  std::vector<double> terms_;
  double tail_ = 0.0;
  double sum_ = 0.0;
};

/// Upper bound on sum_{h > H} omega^{scale h^power}, see DecaySeries.
double decay_tail_bound(double log_omega, double scale, double power, std::uint64_t H);

/// rho(h) = omega^{sum_j lambda a_j |h_j|^{b_j}}.
double rho(std::span<const std::int64_t> h, const WeightModel& model, double lambda = 1.0);

/// Exponent sum_j lambda a_j |h_j|^{b_j} of rho.
double rho_exponent(std::span<const std::int64_t> h, const WeightModel& model, double lambda = 1.0);

/// A_lambda = sum_{h>=1} omega^{lambda a_* (h^{b_*} - 1)}.
CertifiedValue a_lambda(double lambda, const WeightModel& model, Tolerance tol = {});

/// One-dimensional kernel factor
///   theta(t) = 1 + 2 sum_{h>=1} omega^{lambda a_j h^{b_j}} cos(2 pi h t)
/// for a fixed coordinate. Coefficients are stored so the factor can be
/// evaluated at many points.
class ThetaSeries {
 public:
  ThetaSeries(const WeightModel& model, std::size_t coord, double lambda, Tolerance tol);

  /// theta(t), any real t (periodic).
  double operator()(double t) const;
  double at_zero() const { return at_zero_; }
  /// 1 - 2 sum c_h, the smallest value theta can take.
  double lower_bound() const { return lower_; }
  /// Certified absolute error of every value returned by this series.
  double trunc_bound() const { return trunc_; }
  std::span<const double> coefficients() const { return coeff_; }

 private:
  std::vector<double> coeff_;
  double at_zero_ = 1.0;
  double lower_ = 1.0;
  double trunc_ = 0.0;
};

CertifiedValue theta(double t, std::size_t coord, double lambda, const WeightModel& model,
                     Tolerance tol = {});

/// Product of certified factors with |x_j| <= bound_j: the error of the
/// product is at most prod(bound_j + err_j) - prod(bound_j).
double product_error_bound(std::span<const double> bounds, std::span<const double> errors);

/// K(x, y) = prod_j theta_j({x_j - y_j}) at lambda = 1.
class ReproducingKernel {
 public:
  ReproducingKernel(const WeightModel& model, std::size_t dim, Tolerance tol);

  double operator()(std::span<const double> x, std::span<const double> y) const;
  std::size_t dim() const { return factors_.size(); }
  /// theta_j(t), the j-th factor of the product.
  double factor(std::size_t j, double t) const { return factors_[j](t); }
  /// Certified error bound valid for every evaluation.
  double trunc_bound() const { return trunc_; }
  /// K(x, x) = prod_j theta_j(0).
  double diagonal() const { return diagonal_; }

 private:
  std::vector<ThetaSeries> factors_;
  double trunc_ = 0.0;
  double diagonal_ = 1.0;
};

CertifiedValue kernel(std::span<const double> x, std::span<const double> y, const WeightModel& model,
                      Tolerance tol = {});

}  // namespace korobov
