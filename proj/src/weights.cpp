#include "korobov/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::constant: return "constant";
    case FamilyKind::linear: return "linear";
    case FamilyKind::logarithmic: return "logarithmic";
    case FamilyKind::power: return "power";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
  if (name == "constant") return FamilyKind::constant;
  if (name == "linear") return FamilyKind::linear;
  if (name == "logarithmic") return FamilyKind::logarithmic;
  if (name == "power") return FamilyKind::power;
  throw ConfigError(fmt::format("unknown weight family kind '{}'", name));
}

WeightFamily::WeightFamily(FamilyKind kind, double kappa, double exponent)
    : kind_(kind), kappa_(kappa), exponent_(exponent) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ConfigError(fmt::format("weight family kappa must be positive and finite, got {}", kappa));
  if (kind == FamilyKind::power && (!(exponent >= 0.0) || !std::isfinite(exponent)))
    throw ConfigError(fmt::format("power family exponent must be >= 0, got {}", exponent));
}

WeightFamily WeightFamily::constant(double kappa) { return {FamilyKind::constant, kappa, 0.0}; }
WeightFamily WeightFamily::linear(double kappa) { return {FamilyKind::linear, kappa, 1.0}; }
WeightFamily WeightFamily::logarithmic(double kappa) { return {FamilyKind::logarithmic, kappa, 0.0}; }
WeightFamily WeightFamily::power(double kappa, double p) { return {FamilyKind::power, kappa, p}; }

WeightFamily WeightFamily::with_prefix(std::vector<double> prefix) const {
  for (double w : prefix) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw ConfigError(fmt::format("weight prefix entries must be positive and finite, got {}", w));
  }
  WeightFamily out = *this;
  out.prefix_ = std::move(prefix);
  return out;
}

double WeightFamily::rule(std::size_t j1) const {
  const auto j = static_cast<double>(j1);
  switch (kind_) {
    case FamilyKind::constant: return kappa_;
    case FamilyKind::linear: return kappa_ * j;
    case FamilyKind::logarithmic: return kappa_ * std::log(j + 1.0);
    case FamilyKind::power: return kappa_ * std::pow(j, exponent_);
  }
  return kappa_;
}

double WeightFamily::operator()(std::size_t coord) const {
  if (coord < prefix_.size()) return prefix_[coord];
  return rule(coord + 1);
}

double WeightFamily::infimum() const {
  // every rule kind is nondecreasing, so the tail infimum sits right after the prefix
  double inf = rule(prefix_.size() + 1);
  for (double w : prefix_) inf = std::min(inf, w);
  return inf;
}

bool WeightFamily::nondecreasing() const {
  for (std::size_t i = 1; i < prefix_.size(); ++i)
    if (prefix_[i] < prefix_[i - 1]) return false;
  if (!prefix_.empty() && prefix_.back() > rule(prefix_.size() + 1)) return false;
  return true;
}

double WeightFamily::log_growth_rate() const {
  switch (kind_) {
    case FamilyKind::constant: return 0.0;
    case FamilyKind::linear: return std::numeric_limits<double>::infinity();
    case FamilyKind::logarithmic: return kappa_;
    case FamilyKind::power:
      return exponent_ > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return 0.0;
}

WeightModel::WeightModel(double omega, WeightFamily a, WeightFamily b)
    : omega_(omega), log_omega_(std::log(omega)), a_(std::move(a)), b_(std::move(b)) {
  if (!(omega > 0.0 && omega < 1.0))
    throw ConfigError(fmt::format("omega must lie in (0,1), got {}", omega));
  if (!a_.nondecreasing())
    throw ConfigError("weight sequence a must be nondecreasing");
  a_star_ = a_(0);
  b_star_ = b_.infimum();
  if (!(a_star_ > 0.0)) throw ConfigError("a_1 must be positive");
  if (!(b_star_ > 0.0)) throw ConfigError("inf b_j must be positive");
}

}  // namespace korobov
