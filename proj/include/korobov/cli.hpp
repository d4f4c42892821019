#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "korobov/io.hpp"

namespace korobov::cli {

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> model_path;
  std::vector<std::uint32_t> n;
  std::vector<std::size_t> d;
  std::vector<std::uint32_t> g;
  std::optional<std::uint32_t> g_scalar;
  std::optional<double> lambda;
  std::vector<double> epsilon;
  double s = 1.0;
  double t = 1.0;
  std::optional<std::string> variant;
  std::optional<double> tol;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> method;
  std::optional<std::string> rule_path;
  std::optional<std::string> poly_path;
  std::optional<std::string> candidates_path;
  std::string source = "bound";
  std::string mode = "exp_wt";
  std::string family = "korobov";
  std::optional<std::uint32_t> n_max;
  std::size_t terms = 6;
  std::int64_t max_freq = 4;
};

/// Every field that can influence the output. Thread count and output paths
/// are left out so that they do not change the bytes written.
io::Json resolved_config(const RunConfig& config);

/// Runs one command, writing its output to `out` or to config.out. Errors are
/// reported on `err` as a JSON object; the return value is the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace korobov::cli
