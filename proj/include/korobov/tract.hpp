#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "korobov/bounds.hpp"
#include "korobov/series.hpp"
#include "korobov/weights.hpp"

namespace korobov {

enum class TraceMode { exp_wt, exp_st_wt };
enum class TraceSource { empirical, bound };

std::string_view to_string(TraceMode mode);
std::string_view to_string(TraceSource source);
TraceSource trace_source_from_string(std::string_view name);

struct TractRecord {
  std::size_t d = 0;
  double epsilon = 0.0;
  BigCount n_value;
  /// log(n) / denominator; for an overflowed bound, the log of the real
  /// bound is used in place of log(n).
  double ratio = 0.0;
};

/// Records sorted by (d, epsilon).
struct TractTrace {
  std::vector<TractRecord> records;
  TraceMode mode = TraceMode::exp_wt;
  double s = 1.0;
  double t = 1.0;
  TraceSource source = TraceSource::bound;
  BoundVariant variant = BoundVariant::general;
};

struct TraceOptions {
  /// Variant of the sample-size bound used for source = bound.
  BoundVariant variant = BoundVariant::general;
  EmpiricalOptions empirical;
};

/// log N / (d + log(1/eps)) on a (d, eps) grid.
TractTrace wt_ratio_trace(const std::vector<std::size_t>& d_list, const std::vector<double>& eps_list,
                          const WeightModel& model, TraceSource source, Tolerance tol = {},
                          const TraceOptions& options = {});

/// log N / (d^s + (log(1/eps))^t), s > 0, t >= 1.
TractTrace st_ratio_trace(double s, double t, const std::vector<std::size_t>& d_list,
                          const std::vector<double>& eps_list, const WeightModel& model,
                          TraceSource source, Tolerance tol = {}, const TraceOptions& options = {});

/// 4 eps^{-2 lambda} exp(2 A_lambda sum_{j<d} omega^{lambda a_j}), rounded up.
BigCount exp_form_bound(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                        Tolerance tol = {});

/// S_lambda(d) = sum_{j<d} omega^{lambda a_j} for d = 1..d_max.
std::vector<double> weight_partial_sums(const WeightModel& model, double lambda, std::size_t d_max);

/// Growth of S_1(d), from the data or from the weight family's closed form.
enum class Growth { bounded, logarithmic, polylogarithmic, subpolynomial, polynomial, linear, unknown };

std::string_view to_string(Growth growth);

/// Tractability diagnostics for the algebraic notions.
struct AlgReport {
  /// lim a_j / log j; +inf for linear and power families.
  double log_growth_rate = 0.0;
  double log_inv_omega = 0.0;
  /// min(2, 2 / (A log(1/omega))); 0 when A is infinite.
  double spt_exponent_bound = 2.0;
  std::vector<double> lambdas;
  std::vector<std::size_t> d_values;
  /// partial_sums[i][k] = S_{lambdas[i]}(d_values[k]).
  std::vector<std::vector<double>> partial_sums;
  /// Heuristic classification of S_1 on the computed range.
  Growth empirical_growth = Growth::unknown;
  /// Exact classification when the family has a closed form.
  Growth closed_form_growth = Growth::unknown;
  std::string implied_tractability;
  std::string disclaimer;
};

AlgReport alg_classify(const WeightModel& model, std::size_t d_max, Tolerance tol = {});

/// Heuristic growth class of a nondecreasing sequence S(1..n), read off the
/// increments over the last dyadic blocks.
Growth classify_growth(const std::vector<double>& partial_sums);

}  // namespace korobov
