#include "korobov/qmc.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "korobov/bounds.hpp"
#include "korobov/error.hpp"
#include "korobov/simd.hpp"
#include "korobov/wce.hpp"

namespace korobov {

FourierPolynomial::FourierPolynomial(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ConfigError("polynomial dimension must be >= 1");
}

void FourierPolynomial::add_term(Frequency h, std::complex<double> c) {
  if (h.size() != dim_)
    throw ConfigError(fmt::format("frequency of length {} in a {}-dimensional polynomial", h.size(), dim_));
  terms_[std::move(h)] += c;
}

std::complex<double> FourierPolynomial::integral() const {
  const auto it = terms_.find(Frequency(dim_, 0));
  return it == terms_.end() ? std::complex<double>{} : it->second;
}

std::complex<double> FourierPolynomial::operator()(std::span<const double> x) const {
  if (x.size() != dim_) throw ConfigError("evaluation point has the wrong dimension");
  std::complex<double> sum{};
  for (const auto& [h, c] : terms_) {
    double phase = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) phase += static_cast<double>(h[j]) * x[j];
    phase -= std::floor(phase);
    sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum;
}

bool FourierPolynomial::conjugate_symmetric(double tol) const {
  for (const auto& [h, c] : terms_) {
    Frequency neg(h.size());
    std::transform(h.begin(), h.end(), neg.begin(), [](std::int64_t v) { return -v; });
    const auto it = terms_.find(neg);
    const std::complex<double> partner = it == terms_.end() ? std::complex<double>{} : it->second;
    if (std::abs(partner - std::conj(c)) > tol) return false;
  }
  return true;
}

double FourierPolynomial::norm(const WeightModel& model) const {
  double sum = 0.0;
  for (const auto& [h, c] : terms_) {
    const double mag = std::abs(c);
    if (mag == 0.0) continue;
    // |c|^2 / rho(h) computed in log space
    sum += std::exp(2.0 * std::log(mag) - rho_exponent(h, model) * model.log_omega());
  }
  return std::sqrt(sum);
}

std::complex<double> qmc_apply(const FourierPolynomial& f, const LatticeRule& rule) {
  if (f.dim() != rule.dim()) throw ConfigError("polynomial and rule dimensions differ");
  const PointSet pts = points(rule);
  simd::CompensatedSum re, im;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto v = f(pts[k]);
    re.add(v.real());
    im.add(v.imag());
  }
  const double n = static_cast<double>(rule.n());
  return {re.value() / n, im.value() / n};
}

std::complex<double> exact_qmc_error(const FourierPolynomial& f, const LatticeRule& rule) {
  if (f.dim() != rule.dim()) throw ConfigError("polynomial and rule dimensions differ");
  const auto N = static_cast<std::int64_t>(rule.n());
  std::complex<double> err{};
  for (const auto& [h, c] : f.terms()) {
    bool zero = true;
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      zero = zero && h[j] == 0;
      dot = (dot + ((h[j] % N) + N) % N * rule.g(j)) % N;
    }
    if (!zero && dot == 0) err += c;
  }
  return err;
}

ErrorVsWce error_vs_wce(const FourierPolynomial& f, const LatticeRule& rule, const WeightModel& model,
                        Tolerance tol) {
  const ThetaTable table(model, rule.n(), rule.dim(), 1.0, tol);
  const ErrorEstimate e2 = wce2_theta_product(rule, table);
  // rounding allowance for the cancellation in -1 + mean(prod theta)
  const double rounding = 32.0 * static_cast<double>(rule.dim() + 1) * DBL_EPSILON * table.product_at_zero();
  ErrorVsWce r;
  r.realized = std::abs(exact_qmc_error(f, rule));
  r.e = e2.e();
  r.norm = f.norm(model);
  r.wce_norm = r.e * r.norm;
  r.ratio = r.wce_norm > 0.0 ? r.realized / r.wce_norm : 0.0;
  r.guarantee = std::sqrt(std::max(e2.value + e2.trunc_bound + rounding, 0.0)) * r.norm + 1e-12;
  r.within_guarantee = r.realized <= r.guarantee;
  return r;
}

FourierPolynomial product_cosine(std::span<const double> c) {
  const std::size_t d = c.size();
  FourierPolynomial f(d);
  // each factor is c_j/2 e^{-} + 1 + c_j/2 e^{+}; enumerate {-1,0,1}^d
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= 3;
  for (std::size_t idx = 0; idx < total; ++idx) {
    FourierPolynomial::Frequency h(d);
    double coeff = 1.0;
    std::size_t rest = idx;
    for (std::size_t j = 0; j < d; ++j) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      h[j] = digit - 1;
      coeff *= h[j] == 0 ? 1.0 : c[j] / 2.0;
    }
    f.add_term(std::move(h), coeff);
  }
  return f;
}

FourierPolynomial random_polynomial(std::size_t dim, std::size_t terms, std::int64_t max_freq,
                                    bool real_valued, std::mt19937_64& rng) {
  FourierPolynomial f(dim);
  std::uniform_int_distribution<std::int64_t> freq(-max_freq, max_freq);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (std::size_t t = 0; t < terms; ++t) {
    FourierPolynomial::Frequency h(dim);
    for (auto& v : h) v = freq(rng);
    const double re = coeff(rng), im = coeff(rng);
    if (real_valued) {
      FourierPolynomial::Frequency neg(dim);
      std::transform(h.begin(), h.end(), neg.begin(), [](std::int64_t v) { return -v; });
      if (neg == h) {
        f.add_term(std::move(h), {re, 0.0});
      } else {
        f.add_term(h, {re / 2, im / 2});
        f.add_term(neg, {re / 2, -im / 2});
      }
    } else {
      f.add_term(std::move(h), {re, im});
    }
  }
  return f;
}

FourierPolynomial dual_witness(const LatticeRule& rule, const WeightModel& model) {
  const DualFrequency best = dominant_dual_frequency(rule, model);
  FourierPolynomial f(rule.dim());
  const double c = std::sqrt(best.rho / 2.0);
  FourierPolynomial::Frequency neg(best.h.size());
  std::transform(best.h.begin(), best.h.end(), neg.begin(), [](std::int64_t v) { return -v; });
  f.add_term(best.h, c);
  f.add_term(neg, c);
  return f;
}

FourierPolynomial representer_witness(const LatticeRule& rule, const WeightModel& model,
                                      std::size_t max_terms) {
  double e2 = wce2_theta_product(rule, model).value;
  if (e2 < 1e-10) e2 = wce2_dual_enum(rule, model, 1.0, Tolerance(1e-300)).value;
  const DualRegion region = dual_region(model, rule.dim(), 1.0, Tolerance(std::max(e2 / 4.0, 1e-300)));
  std::vector<std::pair<std::vector<std::int64_t>, double>> found;
  simd::CompensatedSum mass;
  enumerate_dual(rule.g(), rule.n(), model, 1.0, region.threshold, [&](std::span<const std::int64_t> h, double exponent) {
    if (found.size() == max_terms) throw CapExceeded(fmt::format("representer witness exceeds {} terms", max_terms));
    const double r = std::exp(exponent * model.log_omega());
    found.emplace_back(std::vector<std::int64_t>(h.begin(), h.end()), r);
    mass.add(r);
  });
  if (found.empty()) throw CertificateError("no dual frequency in the witness region");
  const double scale = 1.0 / std::sqrt(mass.value());
  FourierPolynomial f(rule.dim());
  for (auto& [h, r] : found) f.add_term(std::move(h), r * scale);
  return f;
}

SearchOptions dual_search_options() {
  SearchOptions options;
  options.evaluator = WceMethod::dual_enum;
  options.tie_slack = 0.0;
  return options;
}

std::vector<ConvergenceRow> convergence_study(std::size_t d, const WeightModel& model,
                                              std::span<const std::uint32_t> primes, Tolerance tol,
                                              SearchOptions options) {
  if (!std::is_sorted(primes.begin(), primes.end()))
    throw ConfigError("convergence study primes must be ascending");
  const BoundVariant variant = d >= 2 ? BoundVariant::korobov : BoundVariant::general;
  std::vector<ConvergenceRow> rows;
  for (std::uint32_t n : primes) {
    const auto result = search_korobov(n, d, model, tol, options);
    ConvergenceRow row;
    row.n = n;
    row.e = result.best_e2.e();
    const double nd = static_cast<double>(n);
    row.n_e = nd * row.e;
    row.n2_e = nd * nd * row.e;
    row.n4_e = nd * nd * nd * nd * row.e;
    row.bound = min_error_bound(n, d, model, variant, tol).bound_value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace korobov
