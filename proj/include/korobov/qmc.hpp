#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "korobov/lattice.hpp"
#include "korobov/search.hpp"
#include "korobov/series.hpp"
#include "korobov/weights.hpp"

namespace korobov {

/// f(x) = sum_h c_h exp(2 pi i h . x) with finitely many frequencies.
class FourierPolynomial {
 public:
  using Frequency = std::vector<std::int64_t>;

  explicit FourierPolynomial(std::size_t dim);

  /// Adds c to the coefficient of frequency h.
  void add_term(Frequency h, std::complex<double> c);

  std::size_t dim() const { return dim_; }
  const std::map<Frequency, std::complex<double>>& terms() const { return terms_; }

  /// Exact integral over the unit cube: the zero coefficient.
  std::complex<double> integral() const;
  std::complex<double> operator()(std::span<const double> x) const;
  /// c(-h) == conj(c(h)) for every h, to within tol.
  bool conjugate_symmetric(double tol = 0.0) const;
  /// (sum_h omega^{-sum a_j |h_j|^{b_j}} |c_h|^2)^{1/2}
  double norm(const WeightModel& model) const;

 private:
  std::size_t dim_;
  std::map<Frequency, std::complex<double>> terms_;
};

/// (1/n) sum_k f(x_k), f evaluated at the lattice points.
std::complex<double> qmc_apply(const FourierPolynomial& f, const LatticeRule& rule);

/// Q(f) - I(f) = sum of the nonzero dual-lattice coefficients.
std::complex<double> exact_qmc_error(const FourierPolynomial& f, const LatticeRule& rule);

struct ErrorVsWce {
  double realized = 0.0;
  double e = 0.0;
  double norm = 0.0;
  /// e * norm, the worst-case guarantee.
  double wce_norm = 0.0;
  /// realized / (e * norm), 0 when both vanish.
  double ratio = 0.0;
  /// sqrt(e^2 + slack) * norm + 1e-12, with slack the truncation bound of e^2
  /// plus a rounding allowance for the theta product.
  double guarantee = 0.0;
  bool within_guarantee = true;
};

ErrorVsWce error_vs_wce(const FourierPolynomial& f, const LatticeRule& rule, const WeightModel& model,
                        Tolerance tol = {});

/// Prod_j (1 + c_j cos(2 pi x_j)), expanded.
FourierPolynomial product_cosine(std::span<const double> c);

/// Random polynomial with `terms` frequencies in [-max_freq, max_freq]^d and
/// coefficients uniform in the unit square; real-valued ones pair h with -h.
FourierPolynomial random_polynomial(std::size_t dim, std::size_t terms, std::int64_t max_freq,
                                    bool real_valued, std::mt19937_64& rng);

/// Unit-norm real witness sqrt(2 rho(h*)) cos(2 pi h* . x) at the dominant
/// dual frequency h* of the rule.
FourierPolynomial dual_witness(const LatticeRule& rule, const WeightModel& model);

/// Unit-norm witness with coefficients proportional to rho(h) on the dual
/// frequencies that carry at least 3/4 of e^2, so that its realized error is
/// at least sqrt(3)/2 times e. Throws CapExceeded beyond max_terms terms.
FourierPolynomial representer_witness(const LatticeRule& rule, const WeightModel& model,
                                      std::size_t max_terms = 200000);

/// Dual-lattice evaluator with exact tie-breaking.
SearchOptions dual_search_options();

struct ConvergenceRow {
  std::uint32_t n = 0;
  double e = 0.0;
  double n_e = 0.0;
  double n2_e = 0.0;
  double n4_e = 0.0;
  /// Existence bound minimized over lambda (Korobov form; general form at d = 1).
  double bound = 0.0;
};

/// Best Korobov error for each prime. Uses the dual-lattice evaluator by
/// default so errors far below 1e-8 stay accurate; pair it with a small tol.
std::vector<ConvergenceRow> convergence_study(std::size_t d, const WeightModel& model,
                                              std::span<const std::uint32_t> primes, Tolerance tol,
                                              SearchOptions options = dual_search_options());

}  // namespace korobov
