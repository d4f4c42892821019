#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "korobov/bounds.hpp"
#include "korobov/lattice.hpp"
#include "korobov/qmc.hpp"
#include "korobov/search.hpp"
#include "korobov/tract.hpp"
#include "korobov/wce.hpp"
#include "korobov/weights.hpp"

namespace korobov::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "korobov-lattice/1";

Json to_json(const WeightFamily& family);
WeightFamily weight_family_from_json(const Json& j);

/// {"omega", "a": {"kind", "kappa"[, "p"]}, "b": {...}[, "prefix_a"][, "prefix_b"]}
Json to_json(const WeightModel& model);
WeightModel weight_model_from_json(const Json& j);

/// {"n", "g"} or the Korobov form {"n", "g_scalar", "d"}.
Json to_json(const LatticeRule& rule);
Json to_json(const KorobovParam& param);
LatticeRule lattice_rule_from_json(const Json& j);

/// {"terms": [{"h": [...], "re": x, "im": y}, ...]}; "im" defaults to 0.
FourierPolynomial polynomial_from_json(const Json& j);
Json to_json(const FourierPolynomial& f);

Json to_json(const ErrorEstimate& e2);
Json to_json(const SearchResult& result);
Json to_json(const BoundReport& report);
Json to_json(const BigCount& count);
Json to_json(const AlgReport& report);
Json to_json(const TractTrace& trace);
Json to_json(const std::vector<ConvergenceRow>& rows);

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_double(double x);

std::string candidates_csv(const SearchResult& result);
std::string trace_csv(const TractTrace& trace);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace korobov::io
