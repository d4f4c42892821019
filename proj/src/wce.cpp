#include "korobov/wce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>

#include <fmt/format.h>

#include "korobov/error.hpp"
#include "korobov/simd.hpp"

namespace korobov {

std::string_view to_string(WceMethod method) {
  switch (method) {
    case WceMethod::dual_enum: return "dual_enum";
    case WceMethod::theta_product: return "theta_product";
    case WceMethod::kernel_double_sum: return "kernel_double_sum";
  }
  return "unknown";
}

WceMethod wce_method_from_string(std::string_view name) {
  if (name == "dual_enum") return WceMethod::dual_enum;
  if (name == "theta_product") return WceMethod::theta_product;
  if (name == "kernel_double_sum") return WceMethod::kernel_double_sum;
  throw ConfigError(fmt::format("unknown worst-case-error method '{}'", name));
}

ThetaTable::ThetaTable(const WeightModel& model, std::uint32_t n, std::size_t dim, double lambda,
                       Tolerance tol)
    : n_(n), lambda_(lambda) {
  if (dim == 0) throw ConfigError("theta table dimension must be >= 1");
  const auto cos_table = simd::symmetric_cos_table(n);
  const auto& k = simd::kernels();

  std::map<std::pair<double, double>, std::size_t> shared;
  std::vector<double> at_zero, errors;
  storage_.reserve(dim);
  std::vector<std::size_t> slot(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const auto key = std::make_pair(model.a(j), model.b(j));
    auto it = shared.find(key);
    if (it == shared.end()) {
      const ThetaSeries series(model, j, lambda, tol);
      std::vector<double> row(n);
      k.theta_at_fractions(series.coefficients(), cos_table, row);
      storage_.push_back(std::move(row));
      it = shared.emplace(key, storage_.size() - 1).first;
      at_zero.push_back(series.at_zero());
      errors.push_back(series.trunc_bound());
    }
    slot[j] = it->second;
  }
  rows_.resize(dim);
  std::vector<double> bounds(dim), errs(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    rows_[j] = storage_[slot[j]].data();
    bounds[j] = at_zero[slot[j]];
    errs[j] = errors[slot[j]];
    product_at_zero_ *= bounds[j];
  }
  trunc_ = product_error_bound(bounds, errs);
}

std::uint64_t enum_node_cap() {
  if (const char* env = std::getenv("KOROBOV_MAX_ENUM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw ConfigError(fmt::format("KOROBOV_MAX_ENUM must be a positive integer, got '{}'", env));
    return v;
  }
  return 100'000'000;
}

DualRegion dual_region(const WeightModel& model, std::size_t dim, double lambda, Tolerance tol) {
  constexpr std::array<double, 4> fractions = {0.125, 0.25, 0.5, 0.75};
  // aim slightly below tol so the reported tail never exceeds it after rounding
  const double log_tol = std::log(tol.abs_tol) - 1e-6;
  DualRegion best{std::numeric_limits<double>::infinity(), 0.0};
  for (double s : fractions) {
    double log_mass = 0.0;
    try {
      std::map<std::pair<double, double>, double> cache;
      for (std::size_t j = 0; j < dim; ++j) {
        const auto key = std::make_pair(model.a(j), model.b(j));
        auto it = cache.find(key);
        if (it == cache.end()) {
          const ThetaSeries series(model, j, s * lambda, tol);
          it = cache.emplace(key, std::log(series.at_zero() + series.trunc_bound())).first;
        }
        log_mass += it->second;
      }
    } catch (const CapExceeded&) {
      continue;
    }
    const double scale = (1.0 - s) * model.log_omega();
    const double threshold = std::max(0.0, (log_tol - log_mass) / scale);
    // the enumerated threshold is padded so rounding at the region boundary
    // stays inside the certified set
    const double padded = threshold * (1.0 + 1e-9) + 1e-12;
    if (padded < best.threshold) best = {padded, std::exp(scale * threshold + log_mass)};
  }
  if (!std::isfinite(best.threshold))
    throw CapExceeded("dual region: no tail certificate could be computed");
  return best;
}

namespace {

class Enumerator {
 public:
  Enumerator(std::span<const std::uint32_t> g, std::uint32_t modulus, const WeightModel& model,
             double lambda, double threshold, const DualVisitor& visit, std::uint64_t max_nodes)
      : g_(g), modulus_(modulus), threshold_(threshold), visit_(visit), max_nodes_(max_nodes),
        h_(g.size(), 0), costs_(g.size()) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double scale = lambda * model.a(j), power = model.b(j);
      const double reach = std::pow(threshold / scale, 1.0 / power);
      if (!(reach < 5e7))
        throw CapExceeded(fmt::format(
            "dual enumeration infeasible: coordinate {} ranges over |h| <= {:.3g}", j, reach));
      auto m_max = static_cast<std::int64_t>(reach) + 1;
      auto& c = costs_[j];
      c.reserve(static_cast<std::size_t>(m_max) + 1);
      for (std::int64_t m = 0; m <= m_max; ++m) {
        const double cost = m == 0 ? 0.0 : scale * std::pow(static_cast<double>(m), power);
        if (cost > threshold) break;
        c.push_back(cost);
      }
    }
    if (modulus_ > 1) {
      const auto last = g.size() - 1;
      const std::uint32_t gl = g[last] % modulus_;
      inv_last_ = gl == 0 ? 0 : inverse_mod_prime(gl, modulus_);
    }
  }

  std::uint64_t run() {
    descend(0, 0, threshold_, 0.0, true);
    return nodes_;
  }

 private:
  std::int64_t reach(std::size_t j, double remaining) const {
    const auto& c = costs_[j];
    // costs are increasing in m
    const auto it = std::upper_bound(c.begin(), c.end(), remaining);
    return static_cast<std::int64_t>(it - c.begin()) - 1;
  }

  void tick(std::uint64_t count) {
    nodes_ += count;
    if (nodes_ > max_nodes_)
      throw CapExceeded(fmt::format("dual enumeration infeasible: more than {} nodes", max_nodes_));
  }

  void emit(std::size_t j, std::int64_t h, double exponent) {
    h_[j] = h;
    visit_(h_, exponent);
  }

  void descend(std::size_t j, std::uint64_t partial, double remaining, double exponent, bool all_zero) {
    const std::int64_t m = reach(j, remaining);
    if (m < 0) return;
    const auto& c = costs_[j];
    const auto N = static_cast<std::int64_t>(modulus_);
    if (j + 1 == g_.size()) {
      const std::uint32_t gl = modulus_ > 1 ? g_[j] % modulus_ : 0;
      if (gl == 0) {
        if (modulus_ > 1 && partial != 0) return;
        tick(static_cast<std::uint64_t>(2 * m + 1));
        for (std::int64_t h = -m; h <= m; ++h) {
          if (all_zero && h == 0) continue;
          emit(j, h, exponent + c[static_cast<std::size_t>(h < 0 ? -h : h)]);
        }
      } else {
        // h = -partial / g_last (mod N)
        const auto r = static_cast<std::int64_t>(
            mul_mod((modulus_ - partial) % modulus_, inv_last_, modulus_));
        std::int64_t h = r - N * ((r + m) / N);
        tick(static_cast<std::uint64_t>((2 * m) / N + 1));
        for (; h <= m; h += N) {
          if (all_zero && h == 0) continue;
          emit(j, h, exponent + c[static_cast<std::size_t>(h < 0 ? -h : h)]);
        }
      }
      h_[j] = 0;
      return;
    }
    tick(static_cast<std::uint64_t>(2 * m + 1));
    const std::uint64_t gj = g_[j] % modulus_;
    for (std::int64_t h = -m; h <= m; ++h) {
      const double cost = c[static_cast<std::size_t>(h < 0 ? -h : h)];
      h_[j] = h;
      const auto hm = static_cast<std::uint64_t>(((h % N) + N) % N);
      descend(j + 1, (partial + hm * gj) % modulus_, remaining - cost, exponent + cost,
              all_zero && h == 0);
    }
    h_[j] = 0;
  }

  std::span<const std::uint32_t> g_;
  std::uint32_t modulus_;
  double threshold_;
  const DualVisitor& visit_;
  std::uint64_t max_nodes_;
  std::vector<std::int64_t> h_;
  std::vector<std::vector<double>> costs_;
  std::uint64_t inv_last_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::uint64_t enumerate_dual(std::span<const std::uint32_t> g, std::uint32_t modulus,
                             const WeightModel& model, double lambda, double threshold,
                             const DualVisitor& visit, std::uint64_t max_nodes) {
  if (g.empty()) throw ConfigError("dual enumeration needs dimension >= 1");
  if (modulus == 0) throw ConfigError("dual enumeration modulus must be positive");
  if (modulus > 1 && !is_prime(modulus)) throw ConfigError("dual enumeration modulus must be prime");
  Enumerator e(g, modulus, model, lambda, threshold, visit, max_nodes);
  return e.run();
}

ErrorEstimate wce2_dual_enum(const LatticeRule& rule, const WeightModel& model, double lambda,
                             Tolerance tol, std::uint64_t max_nodes) {
  const DualRegion region = dual_region(model, rule.dim(), lambda, tol);
  simd::CompensatedSum sum;
  const double log_omega = model.log_omega();
  enumerate_dual(
      rule.g(), rule.n(), model, lambda, region.threshold,
      [&](std::span<const std::int64_t>, double exponent) { sum.add(std::exp(exponent * log_omega)); },
      max_nodes);
  return {sum.value(), region.tail_bound, WceMethod::dual_enum};
}

ErrorEstimate wce2_theta_product(const LatticeRule& rule, const ThetaTable& table) {
  if (table.n() != rule.n() || table.dim() != rule.dim())
    throw ConfigError("theta table does not match the lattice rule");
  const double total = simd::kernels().lattice_product_sum(table.rows(), rule.g(), rule.n());
  return {total / rule.n() - 1.0, table.trunc_bound(), WceMethod::theta_product};
}

ErrorEstimate wce2_theta_product(const LatticeRule& rule, const WeightModel& model, double lambda,
                                 Tolerance tol) {
  const ThetaTable table(model, rule.n(), rule.dim(), lambda, tol);
  return wce2_theta_product(rule, table);
}

ErrorEstimate wce2_kernel_double_sum(const LatticeRule& rule, const WeightModel& model, Tolerance tol) {
  const std::uint64_t n = rule.n();
  if (n * n > 100'000'000)
    throw CapExceeded(fmt::format("kernel double sum needs n^2 <= 1e8, got n = {}", n));
  const ReproducingKernel K(model, rule.dim(), tol);
  const std::size_t d = rule.dim();
  // x_k - x_l is (((k - l) g_j) mod n) / n up to an integer shift, so each
  // factor is only ever needed at the n grid values m / n
  std::vector<double> grid(d * n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t m = 0; m < n; ++m) grid[j * n + m] = K.factor(j, static_cast<double>(m) / static_cast<double>(n));
  const auto pair = [&](std::uint64_t k, std::uint64_t l) {
    double v = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::uint64_t m = ((k + n - l) % n) * rule.g()[j] % n;
      v *= grid[j * n + m];
    }
    return v;
  };
  simd::CompensatedSum off_diagonal;
  for (std::uint64_t k = 0; k < n; ++k)
    for (std::uint64_t l = k + 1; l < n; ++l) off_diagonal.add(pair(k, l));
  simd::CompensatedSum total;
  for (std::uint64_t k = 0; k < n; ++k) total.add(pair(k, k));
  total.add(2.0 * off_diagonal.value());
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return {total.value() / nn - 1.0, K.trunc_bound(), WceMethod::kernel_double_sum};
}

CertifiedValue sum_rho_nonzero(const WeightModel& model, std::size_t dim, double lambda, Tolerance tol,
                               std::uint64_t max_nodes) {
  const DualRegion region = dual_region(model, dim, lambda, tol);
  const std::vector<std::uint32_t> zeros(dim, 0);
  simd::CompensatedSum sum;
  const double log_omega = model.log_omega();
  enumerate_dual(
      zeros, 1, model, lambda, region.threshold,
      [&](std::span<const std::int64_t>, double exponent) { sum.add(std::exp(exponent * log_omega)); },
      max_nodes);
  return {sum.value(), region.tail_bound};
}

DualFrequency dominant_dual_frequency(const LatticeRule& rule, const WeightModel& model,
                                      std::uint64_t max_nodes) {
  // n e_j is dual for every j, so the region below always contains a dual point
  double threshold = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rule.dim(); ++j)
    threshold = std::min(threshold, model.a(j) * std::pow(static_cast<double>(rule.n()), model.b(j)));
  threshold *= 1.0 + 1e-12;

  DualFrequency best;
  double best_exponent = std::numeric_limits<double>::infinity();
  enumerate_dual(
      rule.g(), rule.n(), model, 1.0, threshold,
      [&](std::span<const std::int64_t> h, double exponent) {
        if (exponent < best_exponent) {
          best_exponent = exponent;
          best.h.assign(h.begin(), h.end());
        }
      },
      max_nodes);
  best.rho = std::exp(best_exponent * model.log_omega());
  return best;
}

}  // namespace korobov
