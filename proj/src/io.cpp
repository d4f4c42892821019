#include "korobov/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include <unistd.h>

#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov::io {
namespace {

void reject_unknown(const Json& j, std::string_view what, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(fmt::format("{} must be a JSON object", what));
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto name : allowed) ok = ok || key == name;
    if (!ok) throw ConfigError(fmt::format("unknown field '{}' in {}", key, what));
  }
}

const Json& field(const Json& j, std::string_view what, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(fmt::format("missing field '{}' in {}", key, what));
  return *it;
}

double number(const Json& j, std::string_view what) {
  if (!j.is_number()) throw ConfigError(fmt::format("{} must be a number", what));
  return j.get<double>();
}

std::int64_t integer(const Json& j, std::string_view what) {
  if (!j.is_number_integer()) throw ConfigError(fmt::format("{} must be an integer", what));
  return j.get<std::int64_t>();
}

std::uint32_t uint32(const Json& j, std::string_view what) {
  const std::int64_t v = integer(j, what);
  if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX))
    throw ConfigError(fmt::format("{} out of range", what));
  return static_cast<std::uint32_t>(v);
}

std::vector<double> number_list(const Json& j, std::string_view what) {
  if (!j.is_array()) throw ConfigError(fmt::format("{} must be an array", what));
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const WeightFamily& family) {
  Json j;
  j["kind"] = to_string(family.kind());
  j["kappa"] = family.kappa();
  if (family.kind() == FamilyKind::power) j["p"] = family.exponent();
  return j;
}

WeightFamily weight_family_from_json(const Json& j) {
  reject_unknown(j, "weight family", {"kind", "kappa", "p"});
  const Json& kind_field = field(j, "weight family", "kind");
  if (!kind_field.is_string()) throw ConfigError("weight family kind must be a string");
  const FamilyKind kind = family_kind_from_string(kind_field.get<std::string>());
  const double kappa = number(field(j, "weight family", "kappa"), "kappa");
  if (kind != FamilyKind::power && j.contains("p"))
    throw ConfigError("field 'p' is only valid for the power family");
  switch (kind) {
    case FamilyKind::constant: return WeightFamily::constant(kappa);
    case FamilyKind::linear: return WeightFamily::linear(kappa);
    case FamilyKind::logarithmic: return WeightFamily::logarithmic(kappa);
    case FamilyKind::power: return WeightFamily::power(kappa, number(field(j, "power family", "p"), "p"));
  }
  throw ConfigError("unreachable weight family kind");
}

Json to_json(const WeightModel& model) {
  Json j;
  j["omega"] = model.omega();
  j["a"] = to_json(model.a_family());
  j["b"] = to_json(model.b_family());
  if (!model.a_family().prefix().empty()) j["prefix_a"] = model.a_family().prefix();
  if (!model.b_family().prefix().empty()) j["prefix_b"] = model.b_family().prefix();
  return j;
}

WeightModel weight_model_from_json(const Json& j) {
  reject_unknown(j, "weight model", {"omega", "a", "b", "prefix_a", "prefix_b"});
  const double omega = number(field(j, "weight model", "omega"), "omega");
  WeightFamily a = weight_family_from_json(field(j, "weight model", "a"));
  WeightFamily b = weight_family_from_json(field(j, "weight model", "b"));
  if (j.contains("prefix_a")) a = a.with_prefix(number_list(j["prefix_a"], "prefix_a"));
  if (j.contains("prefix_b")) b = b.with_prefix(number_list(j["prefix_b"], "prefix_b"));
  return WeightModel(omega, std::move(a), std::move(b));
}

Json to_json(const LatticeRule& rule) {
  Json j;
  j["n"] = rule.n();
  j["g"] = rule.g();
  return j;
}

Json to_json(const KorobovParam& param) {
  Json j;
  j["n"] = param.n;
  j["g_scalar"] = param.g;
  j["d"] = param.d;
  return j;
}

LatticeRule lattice_rule_from_json(const Json& j) {
  if (j.is_object() && j.contains("g_scalar")) {
    reject_unknown(j, "Korobov rule", {"n", "g_scalar", "d"});
    const std::uint32_t n = uint32(field(j, "Korobov rule", "n"), "n");
    const std::uint32_t g = uint32(field(j, "Korobov rule", "g_scalar"), "g_scalar");
    const std::int64_t d = integer(field(j, "Korobov rule", "d"), "d");
    if (d < 1) throw ConfigError("d must be >= 1");
    if (n < 2 || g >= n) throw ConfigError("Korobov scalar must lie in [0, n)");
    return korobov_vector({n, g, static_cast<std::size_t>(d)});
  }
  reject_unknown(j, "lattice rule", {"n", "g"});
  const std::uint32_t n = uint32(field(j, "lattice rule", "n"), "n");
  const Json& g = field(j, "lattice rule", "g");
  if (!g.is_array()) throw ConfigError("g must be an array");
  std::vector<std::uint32_t> gv;
  for (const auto& v : g) gv.push_back(uint32(v, "g component"));
  return LatticeRule(n, std::move(gv));
}

FourierPolynomial polynomial_from_json(const Json& j) {
  reject_unknown(j, "polynomial", {"terms"});
  const Json& terms = field(j, "polynomial", "terms");
  if (!terms.is_array() || terms.empty()) throw ConfigError("polynomial terms must be a nonempty array");
  std::optional<FourierPolynomial> f;
  for (const auto& t : terms) {
    reject_unknown(t, "polynomial term", {"h", "re", "im"});
    const Json& h = field(t, "polynomial term", "h");
    if (!h.is_array() || h.empty()) throw ConfigError("term frequency must be a nonempty array");
    FourierPolynomial::Frequency freq;
    for (const auto& v : h) freq.push_back(integer(v, "frequency component"));
    if (!f) f.emplace(freq.size());
    const double re = number(field(t, "polynomial term", "re"), "re");
    const double im = t.contains("im") ? number(t["im"], "im") : 0.0;
    f->add_term(std::move(freq), {re, im});
  }
  return *f;
}

Json to_json(const FourierPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [h, c] : f.terms()) terms.push_back({{"h", h}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"terms", terms}};
}

Json to_json(const ErrorEstimate& e2) {
  Json j;
  j["e2"] = e2.value;
  j["e"] = e2.e();
  j["trunc_bound"] = e2.trunc_bound;
  j["method"] = to_string(e2.method);
  return j;
}

Json to_json(const SearchResult& result) {
  Json j = to_json(result.best_rule);
  if (result.best_scalar) j["g_scalar"] = *result.best_scalar;
  j.update(to_json(result.best_e2));
  j["evaluated"] = result.evaluated;
  j["ties"] = result.ties;
  return j;
}

Json to_json(const BoundReport& report) {
  Json j;
  j["n"] = report.n;
  j["d"] = report.d;
  j["lambda"] = report.lambda;
  j["a_lambda"] = finite_or_null(report.a_lambda);
  j["product_term"] = finite_or_null(report.product_term);
  j["bound_value"] = finite_or_null(report.bound_value);
  j["variant"] = to_string(report.variant);
  j["overflow"] = report.overflow;
  return j;
}

Json to_json(const BigCount& count) {
  if (count.infinite) return Json{{"value", nullptr}, {"infinite", true}, {"log_value", count.log_value}};
  return Json{{"value", count.value}, {"infinite", false}, {"log_value", count.log_value}};
}

Json to_json(const AlgReport& report) {
  Json j;
  j["log_growth_rate"] = finite_or_null(report.log_growth_rate);
  j["log_inv_omega"] = report.log_inv_omega;
  j["spt_exponent_bound"] = report.spt_exponent_bound;
  j["lambdas"] = report.lambdas;
  j["d_values"] = report.d_values;
  j["partial_sums"] = report.partial_sums;
  j["empirical_growth"] = to_string(report.empirical_growth);
  j["closed_form_growth"] = to_string(report.closed_form_growth);
  j["implied_tractability"] = report.implied_tractability;
  j["disclaimer"] = report.disclaimer;
  return j;
}

Json to_json(const TractTrace& trace) {
  Json records = Json::array();
  for (const auto& r : trace.records) {
    records.push_back({{"d", r.d},
                       {"epsilon", r.epsilon},
                       {"n", to_json(r.n_value)},
                       {"ratio", r.ratio}});
  }
  Json j;
  j["mode"] = to_string(trace.mode);
  j["source"] = to_string(trace.source);
  j["variant"] = to_string(trace.variant);
  if (trace.mode == TraceMode::exp_st_wt) {
    j["s"] = trace.s;
    j["t"] = trace.t;
  }
  j["records"] = records;
  return j;
}

Json to_json(const std::vector<ConvergenceRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"e", r.e}, {"n_e", r.n_e}, {"n2_e", r.n2_e}, {"n4_e", r.n4_e},
                   {"bound", finite_or_null(r.bound)}});
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string candidates_csv(const SearchResult& result) {
  std::string out = "g,e2,trunc_bound\n";
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const auto& c = result.candidates[i];
    std::string g;
    if (result.best_scalar) {
      // Korobov candidates are stored in scalar order
      g = fmt::format("{}", i);
    } else {
      g = fmt::format("{}", fmt::join(c.g, " "));
    }
    out += fmt::format("{},{},{}\n", g, format_double(c.e2), format_double(c.trunc_bound));
  }
  return out;
}

std::string trace_csv(const TractTrace& trace) {
  std::string out = "d,epsilon,n,ratio,mode,source\n";
  for (const auto& r : trace.records) {
    const std::string n = r.n_value.infinite ? "inf" : fmt::format("{}", r.n_value.value);
    out += fmt::format("{},{},{},{},{},{}\n", r.d, format_double(r.epsilon), n, format_double(r.ratio),
                       to_string(trace.mode), to_string(trace.source));
  }
  return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,e,n_e,n2_e,n4_e,bound\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.n, format_double(r.e), format_double(r.n_e),
                       format_double(r.n2_e), format_double(r.n4_e), format_double(r.bound));
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open {}", path.string()));
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write {}", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ConfigError(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError(fmt::format("cannot rename onto {}: {}", path.string(), ec.message()));
  }
}

}  // namespace korobov::io
