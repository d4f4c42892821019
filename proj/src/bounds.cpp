#include "korobov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "korobov/error.hpp"
#include "korobov/lattice.hpp"
#include "korobov/search.hpp"

namespace korobov {

std::string_view to_string(BoundVariant variant) {
  return variant == BoundVariant::general ? "general" : "korobov";
}

BoundVariant bound_variant_from_string(std::string_view name) {
  if (name == "general") return BoundVariant::general;
  if (name == "korobov") return BoundVariant::korobov;
  throw ConfigError(fmt::format("unknown bound variant '{}'", name));
}

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError(fmt::format("epsilon must lie in (0,1), got {}", epsilon));
}

}  // namespace

ProductBound product_bound(std::size_t d, double lambda, const WeightModel& model, Tolerance tol) {
  const CertifiedValue A = a_lambda(lambda, model, tol);
  ProductBound out;
  out.a_lambda = A.value;
  for (std::size_t j = 0; j < d; ++j) {
    const double x = 2.0 * A.value * std::exp(lambda * model.a(j) * model.log_omega());
    out.value *= 1.0 + x;
    out.log_value += std::log1p(x);
  }
  if (!std::isfinite(out.value)) {
    out.value = std::numeric_limits<double>::infinity();
    out.overflow = true;
  }
  return out;
}

BoundReport error_bound(std::uint32_t n, std::size_t d, double lambda, const WeightModel& model,
                        BoundVariant variant, Tolerance tol) {
  if (n < 2) throw ConfigError("error bound needs n >= 2");
  if (d == 0) throw ConfigError("error bound needs d >= 1");
  const ProductBound p = product_bound(d, lambda, model, tol);
  // at d = 1 the Korobov factor d - 1 vanishes; fall back to the general bound
  const double c = variant == BoundVariant::korobov && d >= 2 ? static_cast<double>(d - 1) : 1.0;
  BoundReport r;
  r.n = n;
  r.d = d;
  r.lambda = lambda;
  r.a_lambda = p.a_lambda;
  r.product_term = p.value;
  r.variant = variant;
  const double log_bound = (std::log(c) - std::log(static_cast<double>(n)) + p.log_value) / (2.0 * lambda);
  if (!p.overflow) {
    r.bound_value = std::pow(c * p.value / n, 1.0 / (2.0 * lambda));
  } else {
    r.bound_value = std::exp(log_bound);
  }
  if (!std::isfinite(r.bound_value)) {
    r.bound_value = std::numeric_limits<double>::infinity();
    r.overflow = true;
  }
  return r;
}

std::vector<double> lambda_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

std::pair<double, double> minimize_over_lambda(const std::function<double(double)>& f) {
  const auto grid = lambda_grid();
  std::vector<double> values(grid.size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t best = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      values[i] = f(grid[i]);
    } catch (const CapExceeded&) {
      continue;
    }
    if (best == grid.size() || values[i] < values[best]) best = i;
  }
  if (best == grid.size()) throw CapExceeded("no lambda on the grid admits a certified bound");

  double best_lambda = grid[best], best_value = values[best];
  // grid is decreasing: neighbours bracket the minimum
  double lo = best + 1 < grid.size() ? grid[best + 1] : grid[best];
  double hi = best > 0 ? grid[best - 1] : grid[best];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto probe = [&](double lambda) {
    double v = std::numeric_limits<double>::infinity();
    try {
      v = f(lambda);
    } catch (const CapExceeded&) {
    }
    if (v < best_value) {
      best_value = v;
      best_lambda = lambda;
    }
    return v;
  };
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = probe(x1), f2 = probe(x2);
  for (int step = 0; step < 3 && hi > lo; ++step) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = probe(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = probe(x2);
    }
  }
  return {best_lambda, best_value};
}

BoundReport min_error_bound(std::uint32_t n, std::size_t d, const WeightModel& model,
                            BoundVariant variant, Tolerance tol) {
  const auto [lambda, value] = minimize_over_lambda([&](double lambda) {
    const auto r = error_bound(n, d, lambda, model, variant, tol);
    return r.overflow ? std::numeric_limits<double>::infinity() : r.bound_value;
  });
  (void)value;
  return error_bound(n, d, lambda, model, variant, tol);
}

BigCount ceil_count(double direct, double log_value) {
  BigCount out;
  out.log_value = log_value;
  if (!(log_value < std::log(kBigCountLimit)) || !std::isfinite(direct) || direct >= kBigCountLimit) {
    out.infinite = true;
    out.value = 0;
    return out;
  }
  out.value = static_cast<std::uint64_t>(std::ceil(direct));
  return out;
}

double sample_size_constant(std::size_t d, BoundVariant variant) {
  return variant == BoundVariant::korobov ? static_cast<double>(d) : 1.0;
}

namespace {

BigCount scaled_sample_bound(double factor, double epsilon, std::size_t d, double lambda,
                             const WeightModel& model, BoundVariant variant, Tolerance tol) {
  check_epsilon(epsilon);
  if (d == 0) throw ConfigError("dimension must be >= 1");
  const ProductBound p = product_bound(d, lambda, model, tol);
  const double c = factor * sample_size_constant(d, variant);
  const double log_value = std::log(c) - 2.0 * lambda * std::log(epsilon) + p.log_value;
  const double direct = p.overflow ? std::numeric_limits<double>::infinity()
                                   : c * std::pow(epsilon, -2.0 * lambda) * p.value;
  return ceil_count(direct, log_value);
}

}  // namespace

BigCount m_lambda(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                  BoundVariant variant, Tolerance tol) {
  return scaled_sample_bound(1.0, epsilon, d, lambda, model, variant, tol);
}

BigCount info_complexity_bound_at(double epsilon, std::size_t d, double lambda, const WeightModel& model,
                                  BoundVariant variant, Tolerance tol) {
  return scaled_sample_bound(4.0, epsilon, d, lambda, model, variant, tol);
}

InfoComplexityBound info_complexity_bound(double epsilon, std::size_t d, const WeightModel& model,
                                          BoundVariant variant, Tolerance tol) {
  check_epsilon(epsilon);
  const auto [lambda, value] = minimize_over_lambda([&](double lambda) {
    return info_complexity_bound_at(epsilon, d, lambda, model, variant, tol).log_value;
  });
  (void)value;
  return {info_complexity_bound_at(epsilon, d, lambda, model, variant, tol), lambda};
}

std::uint32_t empirical_info_complexity(double epsilon, std::size_t d, const WeightModel& model,
                                        Tolerance tol, const EmpiricalOptions& options) {
  check_epsilon(epsilon);
  SearchOptions search_options;
  search_options.threads = options.threads;
  for (std::uint64_t p = 2; p <= options.max_n; p = next_prime(p + 1)) {
    const auto result = search_korobov(static_cast<std::uint32_t>(p), d, model, tol, search_options);
    if (result.best_e2.e() <= epsilon) return static_cast<std::uint32_t>(p);
  }
  throw CapExceeded(fmt::format("no prime N <= {} reaches e <= {} in dimension {}", options.max_n,
                                epsilon, d));
}

}  // namespace korobov
