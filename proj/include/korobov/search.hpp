#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "korobov/lattice.hpp"
#include "korobov/series.hpp"
#include "korobov/wce.hpp"
#include "korobov/weights.hpp"

namespace korobov {

enum class SearchFamily { korobov, general };

std::string_view to_string(SearchFamily family);

struct SearchOptions {
  /// theta_product (default) or dual_enum. The dual evaluator sums positive
  /// terms only and keeps full relative accuracy for tiny errors; the theta
  /// product is limited by cancellation to ~1e-16 absolute.
  WceMethod evaluator = WceMethod::theta_product;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
  /// Two candidates tie when |e1^2 - e2^2| <= max trunc bound + tie_slack.
  double tie_slack = 1e-13;
  /// Keep every candidate's value in the result.
  bool keep_candidates = false;
  std::uint64_t max_nodes = enum_node_cap();
};

struct CandidateRecord {
  std::vector<std::uint32_t> g;
  double e2 = 0.0;
  double trunc_bound = 0.0;
};

struct SearchResult {
  LatticeRule best_rule;
  ErrorEstimate best_e2;
  std::uint64_t evaluated = 0;
  std::uint64_t ties = 0;
  /// Korobov scalar of the winner (Korobov searches only).
  std::optional<std::uint32_t> best_scalar;
  /// Filled when SearchOptions::keep_candidates is set, in search order.
  std::vector<CandidateRecord> candidates;
};

/// Exhaustive search over Korobov vectors v_d(g), g = 0..n-1. The minimizer of
/// e^2 (lambda = 1) wins; ties go to the smallest g.
SearchResult search_korobov(std::uint32_t n, std::size_t d, const WeightModel& model, Tolerance tol = {},
                            const SearchOptions& options = {});

/// Exhaustive search over G_n^d, d <= 3 and n^d <= 1e6. Ties go to the
/// lexicographically smallest vector.
SearchResult search_general(std::uint32_t n, std::size_t d, const WeightModel& model, Tolerance tol = {},
                            const SearchOptions& options = {});

/// Mean of sum_{h in dual, h != 0} rho_lambda(h) over the family, i.e. of e^2
/// evaluated at weights lambda a_j. This is the quantity that dominates
/// e^{2 lambda} and that the averaging argument bounds.
double mean_pow_error(std::uint32_t n, std::size_t d, double lambda, const WeightModel& model,
                      Tolerance tol, SearchFamily family, unsigned threads = 1);

/// Number of g in G_n with h . v_d(g) == 0 (mod n).
std::uint64_t count_korobov_roots(std::span<const std::int64_t> h, std::uint32_t n);

}  // namespace korobov
