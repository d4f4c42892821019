#include "korobov/cli.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "korobov/error.hpp"

namespace korobov::cli {
namespace {

using io::Json;

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

struct Output {
  Output(std::string t) : text(std::move(t)) {}

  std::string text;
  /// Nonzero when the command succeeded in writing a result but the result
  /// itself failed a check.
  int status = 0;
  std::string failure;
};

class Runner {
 public:
  explicit Runner(const RunConfig& c) : c_(c) {}

  Output run() {
    const std::string& cmd = c_.command;
    if (cmd == "wce") return wce();
    if (cmd == "search") return search();
    if (cmd == "bound") return bound();
    if (cmd == "nofe") return nofe();
    if (cmd == "tract") return tract();
    if (cmd == "integrate") return integrate();
    if (cmd == "convergence") return convergence();
    throw ConfigError(fmt::format("unknown command '{}'", cmd));
  }

 private:
  const RunConfig& c_;

  WeightModel model() const {
    if (!c_.model_path) throw ConfigError(fmt::format("{} requires --model", c_.command));
    return io::weight_model_from_json(io::read_json_file(*c_.model_path));
  }

  Tolerance tol(double fallback = 1e-14) const { return Tolerance(c_.tol.value_or(fallback)); }

  std::size_t single_d() const {
    if (c_.d.size() != 1) throw ConfigError(fmt::format("{} requires exactly one --d", c_.command));
    if (c_.d[0] < 1) throw ConfigError("--d must be >= 1");
    return c_.d[0];
  }

  std::uint32_t single_n() const {
    if (c_.n.size() != 1) throw ConfigError(fmt::format("{} requires exactly one --n", c_.command));
    return c_.n[0];
  }

  double single_epsilon() const {
    if (c_.epsilon.size() != 1) throw ConfigError(fmt::format("{} requires exactly one --epsilon", c_.command));
    return c_.epsilon[0];
  }

  Format format(Format fallback) const {
    if (!c_.format) return fallback;
    if (*c_.format == "json") return Format::json;
    if (*c_.format == "csv") return Format::csv;
    throw ConfigError(fmt::format("unknown format '{}'", *c_.format));
  }

  BoundVariant variant() const {
    return c_.variant ? bound_variant_from_string(*c_.variant) : BoundVariant::korobov;
  }

  LatticeRule rule() const {
    if (c_.rule_path) {
      if (!c_.n.empty() || !c_.g.empty() || c_.g_scalar)
        throw ConfigError("--rule cannot be combined with --n, --g or --g-scalar");
      return io::lattice_rule_from_json(io::read_json_file(*c_.rule_path));
    }
    const std::uint32_t n = single_n();
    if (c_.g_scalar) {
      if (!c_.g.empty()) throw ConfigError("--g and --g-scalar are exclusive");
      if (*c_.g_scalar >= n) throw ConfigError("--g-scalar must lie in [0, n)");
      return korobov_vector({n, *c_.g_scalar, single_d()});
    }
    if (c_.g.empty()) throw ConfigError(fmt::format("{} requires --rule, --g or --g-scalar", c_.command));
    if (!c_.d.empty() && single_d() != c_.g.size()) throw ConfigError("--d does not match the length of --g");
    return LatticeRule(n, c_.g);
  }

  Json header() const {
    Json j;
    j["schema"] = io::kSchemaVersion;
    j["config"] = resolved_config(c_);
    return j;
  }

  std::string csv_header() const {
    return fmt::format("# schema: {}\n# config: {}\n", io::kSchemaVersion, resolved_config(c_).dump());
  }

  static std::string dump(const Json& j) { return j.dump(2) + "\n"; }

  Output wce() {
    const WeightModel m = model();
    const LatticeRule r = rule();
    const WceMethod method = c_.method ? wce_method_from_string(*c_.method) : WceMethod::theta_product;
    const double lambda = c_.lambda.value_or(1.0);
    ErrorEstimate e2;
    switch (method) {
      case WceMethod::dual_enum: e2 = wce2_dual_enum(r, m, lambda, tol()); break;
      case WceMethod::theta_product: e2 = wce2_theta_product(r, m, lambda, tol()); break;
      case WceMethod::kernel_double_sum:
        if (lambda != 1.0) throw ConfigError("kernel_double_sum supports lambda = 1 only");
        e2 = wce2_kernel_double_sum(r, m, tol());
        break;
    }
    if (format(Format::json) == Format::csv) {
      return {csv_header() + "n,g,e2,e,trunc_bound,method\n" +
              fmt::format("{},{},{},{},{},{}\n", r.n(), fmt::join(r.g(), " "), io::format_double(e2.value),
                          io::format_double(e2.e()), io::format_double(e2.trunc_bound), to_string(e2.method))};
    }
    Json j = header();
    j.update(io::to_json(r));
    j.update(io::to_json(e2));
    return {dump(j)};
  }

  SearchOptions search_options(WceMethod fallback) const {
    SearchOptions options;
    options.evaluator = c_.method ? wce_method_from_string(*c_.method) : fallback;
    options.threads = c_.threads;
    return options;
  }

  Output search() {
    const WeightModel m = model();
    const std::uint32_t n = single_n();
    const std::size_t d = single_d();
    SearchOptions options = search_options(WceMethod::theta_product);
    const Format fmt_out = format(Format::json);
    options.keep_candidates = fmt_out == Format::csv || c_.candidates_path.has_value();
    if (c_.family != "korobov" && c_.family != "general")
      throw ConfigError(fmt::format("unknown search family '{}'", c_.family));
    const SearchResult result = c_.family == "korobov" ? search_korobov(n, d, m, tol(), options)
                                                       : search_general(n, d, m, tol(), options);
    const std::string csv = options.keep_candidates ? csv_header() + io::candidates_csv(result) : "";
    if (c_.candidates_path) io::write_atomic(*c_.candidates_path, csv);
    if (fmt_out == Format::csv) return {csv};
    Json j = header();
    j.update(io::to_json(result));
    return {dump(j)};
  }

  Output bound() {
    const WeightModel m = model();
    const std::uint32_t n = single_n();
    if (!is_prime(n)) throw ConfigError("--n must be prime");
    const std::size_t d = single_d();
    const BoundReport report = c_.lambda ? error_bound(n, d, *c_.lambda, m, variant(), tol())
                                         : min_error_bound(n, d, m, variant(), tol());
    Json j = header();
    j.update(io::to_json(report));
    return {dump(j)};
  }

  Output nofe() {
    const WeightModel m = model();
    const double eps = single_epsilon();
    const std::size_t d = single_d();
    EmpiricalOptions options;
    options.threads = c_.threads;
    if (c_.n_max) options.max_n = *c_.n_max;
    const std::uint32_t upper = empirical_info_complexity(eps, d, m, tol(), options);
    const InfoComplexityBound bound = info_complexity_bound(eps, d, m, variant(), tol());
    Json j = header();
    j["epsilon"] = eps;
    j["d"] = d;
    j["n_upper"] = upper;
    j["n_bound"] = bound.bound.infinite ? Json(nullptr) : Json(bound.bound.value);
    j["n_bound_log"] = bound.bound.log_value;
    j["lambda_star"] = bound.lambda_star;
    return {dump(j)};
  }

  Output tract() {
    const WeightModel m = model();
    if (c_.mode == "alg") {
      const AlgReport report = alg_classify(m, single_d(), tol());
      Json j = header();
      j.update(io::to_json(report));
      return {dump(j)};
    }
    if (c_.d.empty() || c_.epsilon.empty()) throw ConfigError("tract requires --d and --epsilon lists");
    TraceOptions options;
    options.variant = variant();
    options.empirical.threads = c_.threads;
    if (c_.n_max) options.empirical.max_n = *c_.n_max;
    const TraceSource source = trace_source_from_string(c_.source);
    TractTrace trace;
    if (c_.mode == "exp_wt") {
      trace = wt_ratio_trace(c_.d, c_.epsilon, m, source, tol(), options);
    } else if (c_.mode == "exp_st_wt") {
      trace = st_ratio_trace(c_.s, c_.t, c_.d, c_.epsilon, m, source, tol(), options);
    } else {
      throw ConfigError(fmt::format("unknown tract mode '{}'", c_.mode));
    }
    if (format(Format::csv) == Format::csv) return {csv_header() + io::trace_csv(trace)};
    Json j = header();
    j.update(io::to_json(trace));
    return {dump(j)};
  }

  Output integrate() {
    const WeightModel m = model();
    const LatticeRule r = rule();
    std::optional<FourierPolynomial> f;
    if (c_.poly_path) {
      f = io::polynomial_from_json(io::read_json_file(*c_.poly_path));
    } else {
      if (c_.max_freq < 0) throw ConfigError("--max-freq must be >= 0");
      std::mt19937_64 rng(c_.seed);
      f = random_polynomial(r.dim(), c_.terms, c_.max_freq, true, rng);
    }
    if (f->dim() != r.dim()) throw ConfigError("polynomial and rule dimensions differ");
    const auto q = qmc_apply(*f, r);
    const auto exact = f->integral();
    const auto dual = exact_qmc_error(*f, r);
    const ErrorVsWce report = error_vs_wce(*f, r, m, tol());
    Json j = header();
    j.update(io::to_json(r));
    if (!c_.poly_path) j["polynomial"] = io::to_json(*f);
    j["integral"] = {{"re", exact.real()}, {"im", exact.imag()}};
    j["qmc"] = {{"re", q.real()}, {"im", q.imag()}};
    j["qmc_error"] = {{"re", dual.real()}, {"im", dual.imag()}};
    j["realized"] = report.realized;
    j["e"] = report.e;
    j["norm"] = report.norm;
    j["wce_norm"] = report.wce_norm;
    j["ratio"] = report.ratio;
    j["guarantee"] = report.guarantee;
    j["within_guarantee"] = report.within_guarantee;
    Output out{dump(j)};
    if (!report.within_guarantee) {
      out.status = CertificateError("").exit_code();
      out.failure = fmt::format("realized error {} exceeds the worst-case guarantee {}", report.realized,
                                report.guarantee);
    }
    return out;
  }

  Output convergence() {
    const WeightModel m = model();
    const std::size_t d = single_d();
    std::vector<std::uint32_t> primes = c_.n;
    if (primes.empty()) {
      if (!c_.n_max) throw ConfigError("convergence requires --n or --n-max");
      for (std::uint32_t p = 2; p <= *c_.n_max; ++p)
        if (is_prime(p)) primes.push_back(p);
    }
    for (std::uint32_t p : primes)
      if (!is_prime(p)) throw ConfigError(fmt::format("{} is not prime", p));
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    SearchOptions options = search_options(WceMethod::dual_enum);
    options.tie_slack = 0.0;
    const double fallback = options.evaluator == WceMethod::dual_enum ? 1e-200 : 1e-14;
    const auto rows = convergence_study(d, m, primes, tol(fallback), options);
    if (format(Format::csv) == Format::csv) return {csv_header() + io::convergence_csv(rows)};
    Json j = header();
    j["rows"] = io::to_json(rows);
    return {dump(j)};
  }
};

void report_error(std::ostream& err, std::string_view kind, std::string_view message, int code) {
  Json j;
  j["schema"] = io::kSchemaVersion;
  j["error"] = {{"kind", kind}, {"message", message}};
  j["exit_code"] = code;
  err << j.dump() << "\n";
}

}  // namespace

io::Json resolved_config(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.model_path) {
    j["model"] = io::to_json(io::weight_model_from_json(io::read_json_file(*c.model_path)));
  } else {
    j["model"] = nullptr;
  }
  if (c.rule_path) {
    j["rule"] = io::to_json(io::lattice_rule_from_json(io::read_json_file(*c.rule_path)));
  }
  if (c.poly_path) {
    j["polynomial"] = io::to_json(io::polynomial_from_json(io::read_json_file(*c.poly_path)));
  }
  j["n"] = c.n;
  j["d"] = c.d;
  j["g"] = c.g;
  j["g_scalar"] = opt(c.g_scalar);
  j["lambda"] = opt(c.lambda);
  j["epsilon"] = c.epsilon;
  j["s"] = c.s;
  j["t"] = c.t;
  j["variant"] = opt(c.variant);
  j["tol"] = opt(c.tol);
  j["seed"] = c.seed;
  j["format"] = opt(c.format);
  j["method"] = opt(c.method);
  j["source"] = c.source;
  j["mode"] = c.mode;
  j["family"] = c.family;
  j["n_max"] = opt(c.n_max);
  j["terms"] = c.terms;
  j["max_freq"] = c.max_freq;
  j["max_enum"] = enum_node_cap();
  return j;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.threads == 0) throw ConfigError("--threads must be >= 1");
    Runner runner(config);
    const Output result = runner.run();
    if (config.out) {
      io::write_atomic(*config.out, result.text);
    } else {
      out << result.text;
      out.flush();
    }
    if (result.status != 0) {
      report_error(err, "certificate", result.failure, result.status);
      return result.status;
    }
    return 0;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what(), e.exit_code());
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    report_error(err, "config", e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), 1);
    return 1;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice rules in weighted Korobov spaces of analytic functions"};
  app.set_help_all_flag("--help-all");
  RunConfig c;
  app.add_option("command", c.command, "wce | search | bound | nofe | tract | integrate | convergence")
      ->required()
      ->check(CLI::IsMember({"wce", "search", "bound", "nofe", "tract", "integrate", "convergence"}));
  app.add_option("--model", c.model_path, "weight model JSON file");
  app.add_option("--n", c.n, "prime modulus (lists allowed for convergence)")->delimiter(',');
  app.add_option("--d", c.d, "dimension (lists allowed for tract)")->delimiter(',');
  app.add_option("--g", c.g, "generating vector, comma separated")->delimiter(',');
  app.add_option("--g-scalar", c.g_scalar, "Korobov scalar g, used with --d");
  app.add_option("--lambda", c.lambda, "lambda in (0, 1]");
  app.add_option("--epsilon", c.epsilon, "error threshold (lists allowed for tract)")->delimiter(',');
  app.add_option("--s", c.s, "exponent s of EXP-(s,t)-WT");
  app.add_option("--t", c.t, "exponent t of EXP-(s,t)-WT");
  app.add_option("--variant", c.variant, "general | korobov (default korobov)");
  app.add_option("--tol", c.tol, "absolute truncation tolerance");
  app.add_option("--threads", c.threads, "worker threads");
  app.add_option("--seed", c.seed, "seed for randomized corpora");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--format", c.format, "json | csv");
  app.add_option("--method", c.method, "dual_enum | theta_product | kernel_double_sum");
  app.add_option("--rule", c.rule_path, "lattice rule JSON file");
  app.add_option("--poly", c.poly_path, "trigonometric polynomial JSON file");
  app.add_option("--candidates", c.candidates_path, "search: per-candidate CSV path");
  app.add_option("--source", c.source, "tract: empirical | bound");
  app.add_option("--mode", c.mode, "tract: exp_wt | exp_st_wt | alg");
  app.add_option("--family", c.family, "search: korobov | general");
  app.add_option("--n-max", c.n_max, "largest modulus scanned by nofe, tract and convergence");
  app.add_option("--terms", c.terms, "integrate: terms of the random polynomial");
  app.add_option("--max-freq", c.max_freq, "integrate: largest frequency of the random polynomial");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "config", e.what(), 2);
    return 2;
  }
  return run(c, out, err);
}

}  // namespace korobov::cli
