#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace korobov {

enum class FamilyKind { constant, linear, logarithmic, power };

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

/// A positive sequence (w_1, w_2, ...) given by an explicit prefix followed by
/// a closed-form rule:
///
///   constant     w_j = kappa
///   linear       w_j = kappa * j
///   logarithmic  w_j = kappa * log(j + 1)
///   power        w_j = kappa * j^p,  p >= 0
///
/// All rule kinds are nondecreasing in j. Indices passed to `operator()` are
/// zero-based coordinates, i.e. `family(0)` is w_1.
class WeightFamily {
 public:
  static WeightFamily constant(double kappa);
  static WeightFamily linear(double kappa);
  static WeightFamily logarithmic(double kappa);
  static WeightFamily power(double kappa, double p);

  /// Same rule, with w_1..w_J replaced by `prefix`.
  WeightFamily with_prefix(std::vector<double> prefix) const;

  double operator()(std::size_t coord) const;

  /// inf_j w_j, exact.
  double infimum() const;
  /// True when the whole sequence (prefix included) is nondecreasing.
  bool nondecreasing() const;
  /// lim_j w_j / log j: 0 for bounded rules, kappa for logarithmic, +inf for
  /// linear and power with p > 0. Prefixes do not affect the limit.
  double log_growth_rate() const;

  FamilyKind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  double exponent() const { return exponent_; }
  const std::vector<double>& prefix() const { return prefix_; }

  friend bool operator==(const WeightFamily&, const WeightFamily&) = default;

 private:
  WeightFamily(FamilyKind kind, double kappa, double exponent);
  double rule(std::size_t j1) const;

  FamilyKind kind_;
  double kappa_;
  double exponent_;
  std::vector<double> prefix_;
};

/// Parameters of the weighted Korobov space: base omega in (0,1) and the
/// sequences a (nondecreasing, a_1 > 0) and b (inf b_j > 0).
class WeightModel {
 public:
  WeightModel(double omega, WeightFamily a, WeightFamily b);

  double omega() const { return omega_; }
  /// log(omega), negative.
  double log_omega() const { return log_omega_; }
  double a(std::size_t coord) const { return a_(coord); }
  double b(std::size_t coord) const { return b_(coord); }
  double a_star() const { return a_star_; }
  double b_star() const { return b_star_; }
  const WeightFamily& a_family() const { return a_; }
  const WeightFamily& b_family() const { return b_; }

  friend bool operator==(const WeightModel&, const WeightModel&) = default;

 private:
  double omega_;
  double log_omega_;
  WeightFamily a_;
  WeightFamily b_;
  double a_star_;
  double b_star_;
};

}  // namespace korobov
