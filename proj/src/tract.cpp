#include "korobov/tract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov {

std::string_view to_string(TraceMode mode) { return mode == TraceMode::exp_wt ? "exp_wt" : "exp_st_wt"; }

std::string_view to_string(TraceSource source) {
  return source == TraceSource::empirical ? "empirical" : "bound";
}

TraceSource trace_source_from_string(std::string_view name) {
  if (name == "empirical") return TraceSource::empirical;
  if (name == "bound") return TraceSource::bound;
  throw ConfigError(fmt::format("unknown trace source '{}'", name));
}

std::string_view to_string(Growth growth) {
  switch (growth) {
    case Growth::bounded: return "bounded";
    case Growth::logarithmic: return "O(log d)";
    case Growth::polylogarithmic: return "O((log d)^t)";
    case Growth::subpolynomial: return "o(d^tau)";
    case Growth::polynomial: return "polynomial d^tau, tau < 1";
    case Growth::linear: return "linear";
    case Growth::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

TractTrace ratio_trace(TraceMode mode, double s, double t, const std::vector<std::size_t>& d_list,
                       const std::vector<double>& eps_list, const WeightModel& model, TraceSource source,
                       Tolerance tol, const TraceOptions& options) {
  TractTrace trace;
  trace.mode = mode;
  trace.s = s;
  trace.t = t;
  trace.source = source;
  trace.variant = options.variant;
  for (std::size_t d : d_list) {
    if (d == 0) throw ConfigError("trace dimensions must be >= 1");
    for (double eps : eps_list) {
      if (!(eps > 0.0 && eps < 1.0)) throw ConfigError(fmt::format("epsilon {} not in (0,1)", eps));
      TractRecord rec;
      rec.d = d;
      rec.epsilon = eps;
      if (source == TraceSource::bound) {
        rec.n_value = info_complexity_bound(eps, d, model, options.variant, tol).bound;
      } else {
        const std::uint32_t n = empirical_info_complexity(eps, d, model, tol, options.empirical);
        rec.n_value = {n, false, std::log(static_cast<double>(n))};
      }
      const double log_n = rec.n_value.infinite ? rec.n_value.log_value
                                                : std::log(static_cast<double>(rec.n_value.value));
      const double log_inv_eps = -std::log(eps);
      const double denom = std::pow(static_cast<double>(d), s) + std::pow(log_inv_eps, t);
      rec.ratio = log_n / denom;
      trace.records.push_back(rec);
    }
  }
  std::stable_sort(trace.records.begin(), trace.records.end(), [](const auto& x, const auto& y) {
    return x.d != y.d ? x.d < y.d : x.epsilon < y.epsilon;
  });
  return trace;
}

}  // namespace

TractTrace wt_ratio_trace(const std::vector<std::size_t>& d_list, const std::vector<double>& eps_list,
                          const WeightModel& model, TraceSource source, Tolerance tol,
                          const TraceOptions& options) {
  return ratio_trace(TraceMode::exp_wt, 1.0, 1.0, d_list, eps_list, model, source, tol, options);
}

TractTrace st_ratio_trace(double s, double t, const std::vector<std::size_t>& d_list,
                          const std::vector<double>& eps_list, const WeightModel& model,
                          TraceSource source, Tolerance tol, const TraceOptions& options) {
  if (!(s > 0.0)) throw ConfigError(fmt::format("s must be positive, got {}", s));
  if (!(t >= 1.0)) throw ConfigError(fmt::format("t must be >= 1, got {}", t));
  return ratio_trace(TraceMode::exp_st_wt, s, t, d_list, eps_list, model, source, tol, options);
}

BigCount exp_form_bound(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                        Tolerance tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError(fmt::format("epsilon must lie in (0,1), got {}", epsilon));
  const double A = a_lambda(lambda, model, tol).value;
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) sum += std::exp(lambda * model.a(j) * model.log_omega());
  const double log_value = std::log(4.0) - 2.0 * lambda * std::log(epsilon) + 2.0 * A * sum;
  const double direct = 4.0 * std::pow(epsilon, -2.0 * lambda) * std::exp(2.0 * A * sum);
  return ceil_count(direct, log_value);
}

std::vector<double> weight_partial_sums(const WeightModel& model, double lambda, std::size_t d_max) {
  std::vector<double> sums(d_max);
  double s = 0.0;
  for (std::size_t j = 0; j < d_max; ++j) {
    s += std::exp(lambda * model.a(j) * model.log_omega());
    sums[j] = s;
  }
  return sums;
}

Growth classify_growth(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n < 8) return Growth::unknown;
  // increments over the last three dyadic blocks (n/8, n/4], (n/4, n/2], (n/2, n]
  const auto at = [&](std::size_t d) { return partial_sums[d - 1]; };
  const double inc1 = at(n / 4) - at(n / 8);
  const double inc2 = at(n / 2) - at(n / 4);
  const double inc3 = at(n) - at(n / 2);
  const double total = at(n);
  if (inc3 <= 1e-12 * total) return Growth::bounded;
  const double ratio = inc3 / inc2;
  const double prev_ratio = inc2 > 0.0 ? inc2 / inc1 : ratio;
  if (ratio < 0.9 && prev_ratio < 0.95) return Growth::bounded;
  if (ratio <= 1.02) return Growth::logarithmic;
  if (ratio <= 1.1) return Growth::polylogarithmic;
  if (ratio <= 1.5) return Growth::subpolynomial;
  if (ratio < 1.9) return Growth::polynomial;
  return Growth::linear;
}

namespace {

Growth closed_form_growth(const WeightModel& model) {
  const auto& a = model.a_family();
  const double L = -model.log_omega();
  switch (a.kind()) {
    case FamilyKind::constant: return Growth::linear;
    case FamilyKind::linear: return Growth::bounded;
    case FamilyKind::power: return a.exponent() > 0.0 ? Growth::bounded : Growth::linear;
    case FamilyKind::logarithmic: {
      // omega^{kappa log(j+1)} = (j+1)^{-kappa L}
      const double alpha = a.kappa() * L;
      if (alpha > 1.0) return Growth::bounded;
      if (alpha == 1.0) return Growth::logarithmic;
      return Growth::polynomial;
    }
  }
  return Growth::unknown;
}

std::string implied_tractability(Growth growth) {
  switch (growth) {
    case Growth::bounded: return "ALG-strong polynomial (hence ALG-polynomial)";
    case Growth::logarithmic: return "ALG-polynomial";
    case Growth::polylogarithmic: return "ALG-quasi-polynomial";
    case Growth::subpolynomial: return "ALG-uniform weak";
    case Growth::polynomial:
    case Growth::linear: return "none from the exponential-form bound";
    case Growth::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

AlgReport alg_classify(const WeightModel& model, std::size_t d_max, Tolerance tol) {
  (void)tol;
  if (d_max == 0) throw ConfigError("d_max must be >= 1");
  AlgReport r;
  r.log_growth_rate = model.a_family().log_growth_rate();
  r.log_inv_omega = -model.log_omega();
  if (std::isinf(r.log_growth_rate)) r.spt_exponent_bound = 0.0;
  else if (r.log_growth_rate == 0.0) r.spt_exponent_bound = 2.0;
  else r.spt_exponent_bound = std::min(2.0, 2.0 / (r.log_growth_rate * r.log_inv_omega));

  r.lambdas = lambda_grid();
  for (std::size_t d = 1; d < d_max; d *= 2) r.d_values.push_back(d);
  r.d_values.push_back(d_max);
  for (double lambda : r.lambdas) {
    const auto sums = weight_partial_sums(model, lambda, d_max);
    std::vector<double> row;
    for (std::size_t d : r.d_values) row.push_back(sums[d - 1]);
    r.partial_sums.push_back(std::move(row));
  }
  r.empirical_growth = classify_growth(weight_partial_sums(model, 1.0, d_max));
  r.closed_form_growth = closed_form_growth(model);
  r.implied_tractability = implied_tractability(
      r.closed_form_growth != Growth::unknown ? r.closed_form_growth : r.empirical_growth);
  r.disclaimer =
      "empirical_growth is a heuristic read of S_1(d) for d <= d_max; finite data cannot establish "
      "asymptotic growth. closed_form_growth follows from the weight family alone.";
  return r;
}

}  // namespace korobov
