#include "korobov/search.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "korobov/error.hpp"
#include "korobov/simd.hpp"

namespace korobov {

std::string_view to_string(SearchFamily family) {
  return family == SearchFamily::korobov ? "korobov" : "general";
}

namespace {

// Runs fn(i) for i in [0, count) on `threads` workers with contiguous chunks.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::uint64_t lo = t * chunk, hi = std::min(count, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::uint32_t> korobov_generator(std::uint32_t n, std::uint32_t g, std::size_t d) {
  std::vector<std::uint32_t> v(d);
  std::uint64_t p = 1 % n;
  for (std::size_t j = 0; j < d; ++j) {
    v[j] = static_cast<std::uint32_t>(p);
    p = p * g % n;
  }
  return v;
}

std::vector<std::uint32_t> general_generator(std::uint32_t n, std::size_t d, std::uint64_t index) {
  std::vector<std::uint32_t> v(d);
  for (std::size_t j = d; j-- > 0;) {
    v[j] = static_cast<std::uint32_t>(index % n);
    index /= n;
  }
  return v;
}

// Evaluates e^2 of many generating vectors with a shared precomputation.
class CandidateEvaluator {
 public:
  CandidateEvaluator(std::uint32_t n, std::size_t d, const WeightModel& model, double lambda,
                     Tolerance tol, const SearchOptions& options)
      : n_(n), model_(model), lambda_(lambda), options_(options) {
    switch (options.evaluator) {
      case WceMethod::theta_product:
        table_.emplace(model, n, d, lambda, tol);
        break;
      case WceMethod::dual_enum:
        region_ = dual_region(model, d, lambda, tol);
        break;
      case WceMethod::kernel_double_sum:
        throw ConfigError("the kernel double sum is an oracle and cannot drive a search");
    }
  }

  ErrorEstimate operator()(std::span<const std::uint32_t> g) const {
    if (table_) {
      const double total = simd::kernels().lattice_product_sum(table_->rows(), g, n_);
      return {total / n_ - 1.0, table_->trunc_bound(), WceMethod::theta_product};
    }
    simd::CompensatedSum sum;
    const double log_omega = model_.log_omega();
    enumerate_dual(
        g, n_, model_, lambda_, region_.threshold,
        [&](std::span<const std::int64_t>, double exponent) { sum.add(std::exp(exponent * log_omega)); },
        options_.max_nodes);
    return {sum.value(), region_.tail_bound, WceMethod::dual_enum};
  }

 private:
  std::uint32_t n_;
  const WeightModel& model_;
  double lambda_;
  SearchOptions options_;
  std::optional<ThetaTable> table_;
  DualRegion region_;
};

template <class Generator>
SearchResult run_search(std::uint32_t n, std::size_t d, std::uint64_t count, const WeightModel& model,
                        Tolerance tol, const SearchOptions& options, Generator&& generator,
                        std::uint64_t& best_index) {
  const CandidateEvaluator evaluate(n, d, model, 1.0, tol, options);
  std::vector<ErrorEstimate> values(count);
  parallel_for(count, options.threads, [&](std::uint64_t i) { values[i] = evaluate(generator(i)); });

  // order-independent reduction: global minimum, then the first candidate
  // within the tie tolerance of it
  double min_value = std::numeric_limits<double>::infinity();
  double max_trunc = 0.0;
  for (const auto& v : values) {
    min_value = std::min(min_value, v.value);
    max_trunc = std::max(max_trunc, v.trunc_bound);
  }
  const double tie_limit = min_value + max_trunc + options.tie_slack;
  std::uint64_t best = count;
  std::uint64_t ties = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (values[i].value <= tie_limit) {
      ++ties;
      if (best == count) best = i;
    }
  }

  best_index = best;
  SearchResult result{LatticeRule(n, generator(best)), values[best], count, ties, std::nullopt, {}};
  if (options.keep_candidates) {
    result.candidates.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
      result.candidates.push_back({generator(i), values[i].value, values[i].trunc_bound});
  }
  return result;
}

}  // namespace

SearchResult search_korobov(std::uint32_t n, std::size_t d, const WeightModel& model, Tolerance tol,
                            const SearchOptions& options) {
  if (!is_prime(n)) throw ConfigError(fmt::format("search modulus {} is not prime", n));
  if (d == 0) throw ConfigError("search dimension must be >= 1");
  std::uint64_t best = 0;
  auto result = run_search(
      n, d, n, model, tol, options,
      [&](std::uint64_t i) { return korobov_generator(n, static_cast<std::uint32_t>(i), d); }, best);
  result.best_scalar = static_cast<std::uint32_t>(best);
  return result;
}

SearchResult search_general(std::uint32_t n, std::size_t d, const WeightModel& model, Tolerance tol,
                            const SearchOptions& options) {
  if (!is_prime(n)) throw ConfigError(fmt::format("search modulus {} is not prime", n));
  if (d == 0 || d > 3) throw ConfigError(fmt::format("general search needs 1 <= d <= 3, got {}", d));
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < d; ++j) {
    count *= n;
    if (count > 1'000'000)
      throw CapExceeded(fmt::format("general search over G_{}^{} exceeds 1e6 candidates", n, d));
  }
  std::uint64_t best = 0;
  return run_search(
      n, d, count, model, tol, options, [&](std::uint64_t i) { return general_generator(n, d, i); },
      best);
}

double mean_pow_error(std::uint32_t n, std::size_t d, double lambda, const WeightModel& model,
                      Tolerance tol, SearchFamily family, unsigned threads) {
  if (!is_prime(n)) throw ConfigError(fmt::format("modulus {} is not prime", n));
  std::uint64_t count = n;
  if (family == SearchFamily::general) {
    count = 1;
    for (std::size_t j = 0; j < d; ++j) {
      count *= n;
      if (count > 1'000'000)
        throw CapExceeded(fmt::format("averaging over G_{}^{} exceeds 1e6 vectors", n, d));
    }
  }
  SearchOptions options;
  const CandidateEvaluator evaluate(n, d, model, lambda, tol, options);
  std::vector<double> values(count);
  parallel_for(count, threads, [&](std::uint64_t i) {
    const auto g = family == SearchFamily::korobov
                       ? korobov_generator(n, static_cast<std::uint32_t>(i), d)
                       : general_generator(n, d, i);
    values[i] = evaluate(g).value;
  });
  simd::CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(count);
}

std::uint64_t count_korobov_roots(std::span<const std::int64_t> h, std::uint32_t n) {
  std::uint64_t roots = 0;
  const auto N = static_cast<std::int64_t>(n);
  for (std::uint32_t g = 0; g < n; ++g) {
    std::int64_t acc = 0;
    std::int64_t power = 1 % N;
    for (std::int64_t hj : h) {
      acc = (acc + ((hj % N) + N) % N * power) % N;
      power = power * g % N;
    }
    if (acc == 0) ++roots;
  }
  return roots;
}

}  // namespace korobov
