#pragma once

// Batch front end behind the dp5 executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dp5/constants.hpp"
#include "dp5/counting.hpp"
#include "dp5/verify.hpp"

namespace dp5 {

enum class OutputFormat { json, csv };

std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& s);

inline const std::vector<std::string> kSubcommands{"count",   "enumerate", "constants", "verify",
                                                   "predict", "compare",   "fit"};

struct RunConfig {
  std::string subcommand;
  std::vector<i64> heights{100};
  Method method = Method::torsor;
  Strategy strategy = Strategy::full;
  Suite suite = Suite::all;
  i64 prime_limit = 1'000'000;
  OmegaControls omega;
  std::uint64_t samples = 0;       // Monte Carlo cross-check of omega at W = 2; 0 skips it
  int workers = 0;                 // 0: DP5_WORKERS, else hardware concurrency
  std::optional<double> constant;  // use this c instead of computing it (predict, compare, fit)
  std::string output;              // empty or "-": stdout
  OutputFormat format = OutputFormat::json;
};

/// Throws std::invalid_argument on unknown subcommands, nonpositive parameters,
/// heights above the method ceiling, or formats the subcommand cannot emit.
void validate(const RunConfig& config);

struct ComparisonRow {
  i64 height_bound = 0;
  i64 observed = 0;
  double predicted = 0.0;
  double ratio = 0.0;
  double elapsed = 0.0;
};

struct FitResult {
  std::vector<double> coefficients;  // N(B) ~ B * sum_k coefficients[k] (log B)^k, k = 0..4
  double leading = 0.0;              // coefficients[4]
  double residual_norm = 0.0;
};

/// Unweighted least squares of N(B) against B (log B)^k, k = 0..4; needs at least five heights.
FitResult fit_counts(const std::vector<i64>& heights, const std::vector<i64>& counts);

/// Exit status: 0 on success, 1 if a verification check failed, 3 if a
/// computation aborted midway (the output then carries "complete": false).
/// Invalid configurations throw std::invalid_argument.
int run(const RunConfig& config, std::ostream& out);

}  // namespace dp5
