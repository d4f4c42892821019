#include "korobov/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw ConfigError(fmt::format("lambda must lie in (0,1], got {}", lambda));
}

// omega^{scale x^power}
double decay_term(double log_omega, double scale, double power, double x) {
  return std::exp(scale * std::pow(x, power) * log_omega);
}

}  // namespace

Tolerance::Tolerance(double tol) : abs_tol(tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw ConfigError(fmt::format("tolerance must be positive and finite, got {}", tol));
}

double decay_tail_bound(double log_omega, double scale, double power, std::uint64_t H) {
  const double x0 = static_cast<double>(H);
  if (power >= 1.0) {
    const double q_log = scale * log_omega;
    const double q = std::exp(q_log);
    const double one_minus_q = -std::expm1(q_log);
    if (!(one_minus_q > 0.0)) return std::numeric_limits<double>::infinity();
    return decay_term(log_omega, scale, power, x0) * q / one_minus_q;
  }
  const double growth = std::exp2(power) - 1.0;
  double total = 0.0;
  double x = x0;
  for (int k = 0; k < 2048; ++k) {
    const double xp = std::pow(x, power);
    const double block = x * std::exp(scale * xp * log_omega);
    const double ratio = 2.0 * std::exp(scale * xp * growth * log_omega);
    total += block;
    if (ratio < 0.5) return total + block * ratio / (1.0 - ratio);
    x *= 2.0;
    if (!std::isfinite(x)) break;
  }
  return std::numeric_limits<double>::infinity();
}

DecaySeries DecaySeries::build(double log_omega, double scale, double power, double tail_tol,
                               double offset) {
  if (!(scale > 0.0) || !(power > 0.0) || !(log_omega < 0.0))
    throw ConfigError("decay series needs positive scale, positive power and omega < 1");
  if (!(tail_tol > 0.0)) throw ConfigError("decay series needs a positive tail tolerance");

  // every term and tail carries the same constant factor omega^{-scale * offset}
  const double shift = std::exp(-scale * offset * log_omega);
  const auto tail_at = [&](std::uint64_t H) {
    return decay_tail_bound(log_omega, scale, power, H) * shift;
  };

  std::uint64_t H = 1;
  if (power >= 1.0) {
    while (!(tail_at(H) <= tail_tol)) {
      if (++H > kMaxSeriesTerms)
        throw CapExceeded(fmt::format(
            "series omega^({} h^{}) needs more than {} terms for tail {}", scale, power,
            kMaxSeriesTerms, tail_tol));
    }
  } else {
    // first guess: where the individual term drops below the tolerance
    const double guess = std::pow(std::log(tail_tol / shift) / (scale * log_omega), 1.0 / power);
    H = static_cast<std::uint64_t>(std::clamp(guess, 1.0, 2.0 * kMaxSeriesTerms));
    while (!(tail_at(H) <= tail_tol)) {
      H *= 2;
      if (H > kMaxSeriesTerms)
        throw CapExceeded(fmt::format(
            "series omega^({} h^{}) needs more than {} terms for tail {}", scale, power,
            kMaxSeriesTerms, tail_tol));
    }
    std::uint64_t lo = H / 2;  // tail_at(lo) > tol or lo == 0
    while (lo + 1 < H) {
      const std::uint64_t mid = lo + (H - lo) / 2;
      if (tail_at(mid) <= tail_tol) H = mid;
      else lo = mid;
    }
  }
  if (H > kMaxSeriesTerms)
    throw CapExceeded(fmt::format("series needs more than {} terms", kMaxSeriesTerms));

  DecaySeries out;
  out.terms_.resize(H);
  for (std::uint64_t h = 1; h <= H; ++h) {
    const double e = scale * (std::pow(static_cast<double>(h), power) - offset);
    out.terms_[h - 1] = std::exp(e * log_omega);
  }
  double s = 0.0;
  for (auto it = out.terms_.rbegin(); it != out.terms_.rend(); ++it) s += *it;
  out.sum_ = s;
  out.tail_ = tail_at(H);
  return out;
}

double rho_exponent(std::span<const std::int64_t> h, const WeightModel& model, double lambda) {
  double e = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j] == 0) continue;
    const double m = static_cast<double>(h[j] < 0 ? -h[j] : h[j]);
    e += lambda * model.a(j) * std::pow(m, model.b(j));
  }
  return e;
}

double rho(std::span<const std::int64_t> h, const WeightModel& model, double lambda) {
  return std::exp(rho_exponent(h, model, lambda) * model.log_omega());
}

CertifiedValue a_lambda(double lambda, const WeightModel& model, Tolerance tol) {
  check_lambda(lambda);
  const double scale = lambda * model.a_star();
  if (model.b_star() == 1.0) {
    // geometric series, summed in closed form
    return {-1.0 / std::expm1(scale * model.log_omega()), 0.0};
  }
  const auto series =
      DecaySeries::build(model.log_omega(), scale, model.b_star(), tol.abs_tol, 1.0);
  return {series.sum(), series.tail_bound()};
}

ThetaSeries::ThetaSeries(const WeightModel& model, std::size_t coord, double lambda, Tolerance tol) {
  check_lambda(lambda);
  const auto series =
      DecaySeries::build(model.log_omega(), lambda * model.a(coord), model.b(coord), tol.abs_tol / 2);
  coeff_.assign(series.terms().begin(), series.terms().end());
  at_zero_ = 1.0 + 2.0 * series.sum();
  lower_ = 1.0 - 2.0 * series.sum();
  trunc_ = 2.0 * series.tail_bound();
}

double ThetaSeries::operator()(double t) const {
  t -= std::floor(t);
  double s = 0.0;
  for (std::size_t i = coeff_.size(); i-- > 0;) {
    double ht = static_cast<double>(i + 1) * t;
    ht -= std::floor(ht);
    s += coeff_[i] * std::cos(2.0 * std::numbers::pi * ht);
  }
  return 1.0 + 2.0 * s;
}

CertifiedValue theta(double t, std::size_t coord, double lambda, const WeightModel& model,
                     Tolerance tol) {
  const ThetaSeries series(model, coord, lambda, tol);
  return {series(t), series.trunc_bound()};
}

double product_error_bound(std::span<const double> bounds, std::span<const double> errors) {
  double prod = 1.0;
  double log_growth = 0.0;
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    prod *= bounds[j];
    log_growth += std::log1p(errors[j] / bounds[j]);
  }
  // slight inflation absorbs the rounding of the expression itself
  return prod * std::expm1(log_growth) * (1.0 + 1e-12);
}

ReproducingKernel::ReproducingKernel(const WeightModel& model, std::size_t dim, Tolerance tol) {
  if (dim == 0) throw ConfigError("kernel dimension must be at least 1");
  factors_.reserve(dim);
  std::vector<double> bounds, errors;
  for (std::size_t j = 0; j < dim; ++j) {
    factors_.emplace_back(model, j, 1.0, tol);
    bounds.push_back(factors_.back().at_zero());
    errors.push_back(factors_.back().trunc_bound());
    diagonal_ *= factors_.back().at_zero();
  }
  trunc_ = product_error_bound(bounds, errors);
}

double ReproducingKernel::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != factors_.size() || y.size() != factors_.size())
    throw ConfigError("kernel point dimension mismatch");
  double k = 1.0;
  for (std::size_t j = 0; j < factors_.size(); ++j) k *= factors_[j](x[j] - y[j]);
  return k;
}

CertifiedValue kernel(std::span<const double> x, std::span<const double> y, const WeightModel& model,
                      Tolerance tol) {
  const ReproducingKernel K(model, x.size(), tol);
  return {K(x, y), K.trunc_bound()};
}

}  // namespace korobov
