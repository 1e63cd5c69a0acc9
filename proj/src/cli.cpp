#include "dp5/cli.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "dp5/report.hpp"

namespace dp5 {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CountOptions count_options(const RunConfig& c) {
  CountOptions o;
  o.workers = c.workers;
  o.strategy = c.strategy;
  return o;
}

json config_json(const RunConfig& c) {
  json j{{"subcommand", c.subcommand},
         {"heights", c.heights},
         {"method", to_string(c.method)},
         {"strategy", to_string(c.strategy)},
         {"suite", to_string(c.suite)},
         {"prime_limit", c.prime_limit},
         {"cutoff", c.omega.cutoff},
         {"tolerance", c.omega.tolerance},
         {"max_depth", c.omega.max_depth},
         {"samples", c.samples},
         {"workers", c.workers},
         {"format", to_string(c.format)}};
  j["constant"] = c.constant ? json(*c.constant) : json(nullptr);
  return j;
}

json envelope(const RunConfig& c) {
  return {{"schema_version", kSchemaVersion}, {"command", c.subcommand}, {"config", config_json(c)}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

ConstantsControls constants_controls(const RunConfig& c) {
  ConstantsControls cc;
  cc.omega = c.omega;
  cc.prime_limit = c.prime_limit;
  return cc;
}

struct Constant {
  double c, lower, upper;
};

Constant resolve_constant(const RunConfig& c) {
  if (c.constant) return {*c.constant, *c.constant, *c.constant};
  auto r = leading_constant(constants_controls(c));
  return {r.c, r.c_lower, r.c_upper};
}

int run_count(const RunConfig& c, std::ostream& out) {
  std::vector<CountReport> reports;
  std::string error;
  const auto t0 = Clock::now();
  for (i64 B : c.heights) {
    try {
      reports.push_back(count(B, c.method, count_options(c)));
    } catch (const std::overflow_error& e) {
      error = e.what();
      break;
    }
  }
  const bool complete = error.empty();
  if (c.format == OutputFormat::csv) {
    out << "height_bound,method,strategy,count\n";
    for (const auto& r : reports) {
      out << r.height_bound << ',' << to_string(r.method) << ',' << to_string(r.strategy) << ',' << r.count << '\n';
    }
    if (!complete) out << "# incomplete: " << error << '\n';
  } else {
    json j = envelope(c);
    j["results"] = json::array();
    json timing{{"total_seconds", seconds_since(t0)}, {"per_height", json::array()}};
    for (const auto& r : reports) {
      j["results"].push_back(to_json(r));
      timing["per_height"].push_back({{"height_bound", r.height_bound}, {"seconds", r.elapsed}, {"workers", r.workers}});
    }
    j["complete"] = complete;
    if (!complete) j["error"] = error;
    j["timing"] = timing;
    emit(out, j);
  }
  return complete ? 0 : 3;
}

int run_enumerate(const RunConfig& c, std::ostream& out) {
  const auto points = enumerate_points(c.heights.front(), c.method, count_options(c));
  if (c.format == OutputFormat::csv) {
    write_points_csv(out, points);
    return 0;
  }
  json j = envelope(c);
  j["points"] = json::array();
  for (const auto& p : points) {
    j["points"].push_back({{"y", p.point.coords()}, {"height", p.height}, {"torsor", p.torsor.to_array()}});
  }
  emit(out, j);
  return 0;
}

int run_constants(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto r = leading_constant(constants_controls(c));
  json j = envelope(c);
  j["results"] = to_json(r);
  if (c.samples > 0) j["results"]["monte_carlo_w2"] = to_json(omega_volume_monte_carlo(2.0, c.samples));
  j["timing"] = {{"total_seconds", seconds_since(t0)}};
  emit(out, j);
  return 0;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  VerifyControls vc;
  vc.workers = c.workers;
  const auto checks = run_suite(c.suite, vc);
  json j = envelope(c);
  j["results"] = suite_json(c.suite, checks);
  j["timing"] = {{"total_seconds", seconds_since(t0)}};
  emit(out, j);
  return j["results"]["passed"].get<bool>() ? 0 : 1;
}

int run_predict(const RunConfig& c, std::ostream& out) {
  const auto k = resolve_constant(c);
  if (c.format == OutputFormat::csv) {
    out << "height_bound,predicted,predicted_lower,predicted_upper\n";
    for (i64 B : c.heights) {
      const double b = static_cast<double>(B);
      out << B << ',' << json(predicted_count(k.c, b)).dump() << ',' << json(predicted_count(k.lower, b)).dump()
          << ',' << json(predicted_count(k.upper, b)).dump() << '\n';
    }
    return 0;
  }
  json j = envelope(c);
  j["c"] = {{"value", k.c}, {"lower", k.lower}, {"upper", k.upper}};
  j["results"] = json::array();
  for (i64 B : c.heights) {
    const double b = static_cast<double>(B);
    j["results"].push_back({{"height_bound", B},
                            {"predicted", predicted_count(k.c, b)},
                            {"predicted_lower", predicted_count(k.lower, b)},
                            {"predicted_upper", predicted_count(k.upper, b)}});
  }
  emit(out, j);
  return 0;
}

int run_compare(const RunConfig& c, std::ostream& out) {
  const auto k = resolve_constant(c);
  std::vector<ComparisonRow> rows;
  std::string error;
  for (i64 B : c.heights) {
    try {
      const auto r = count(B, c.method, count_options(c));
      const double predicted = predicted_count(k.c, static_cast<double>(B));
      rows.push_back({B, r.count, predicted, static_cast<double>(r.count) / predicted, r.elapsed});
    } catch (const std::overflow_error& e) {
      error = e.what();
      break;
    }
  }
  const bool complete = error.empty();
  if (c.format == OutputFormat::csv) {
    out << "height_bound,observed,predicted,ratio,elapsed\n";
    for (const auto& r : rows) {
      out << r.height_bound << ',' << r.observed << ',' << json(r.predicted).dump() << ',' << json(r.ratio).dump()
          << ',' << json(r.elapsed).dump() << '\n';
    }
    if (!complete) out << "# incomplete: " << error << '\n';
  } else {
    json j = envelope(c);
    j["c"] = {{"value", k.c}, {"lower", k.lower}, {"upper", k.upper}};
    j["results"] = json::array();
    json timing = json::array();
    for (const auto& r : rows) {
      j["results"].push_back({{"height_bound", r.height_bound},
                              {"observed", r.observed},
                              {"predicted", r.predicted},
                              {"ratio", r.ratio}});
      timing.push_back({{"height_bound", r.height_bound}, {"seconds", r.elapsed}});
    }
    j["complete"] = complete;
    if (!complete) j["error"] = error;
    j["timing"] = {{"per_height", timing}};
    emit(out, j);
  }
  return complete ? 0 : 3;
}

int run_fit(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const i64 Bmax = *std::max_element(c.heights.begin(), c.heights.end());
  const auto totals = cumulative(height_histogram(Bmax, c.method, count_options(c)));
  std::vector<i64> counts;
  for (i64 B : c.heights) counts.push_back(totals[static_cast<std::size_t>(B)]);
  const auto f = fit_counts(c.heights, counts);
  const auto k = resolve_constant(c);
  if (c.format == OutputFormat::csv) {
    out << "k,coefficient\n";
    for (std::size_t i = 0; i < f.coefficients.size(); ++i) out << i << ',' << json(f.coefficients[i]).dump() << '\n';
    return 0;
  }
  json j = envelope(c);
  json data = json::array();
  for (std::size_t i = 0; i < counts.size(); ++i) data.push_back({{"height_bound", c.heights[i]}, {"count", counts[i]}});
  j["results"] = {{"data", data},
                  {"coefficients", f.coefficients},
                  {"leading_coefficient", f.leading},
                  {"residual_norm", f.residual_norm},
                  {"c", k.c},
                  {"leading_over_c", f.leading / k.c}};
  j["timing"] = {{"total_seconds", seconds_since(t0)}};
  emit(out, j);
  return 0;
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format: " + s);
}

void validate(const RunConfig& c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
    throw std::invalid_argument("unknown subcommand: " + c.subcommand);
  }
  const bool needs_heights = c.subcommand != "constants" && c.subcommand != "verify";
  if (needs_heights && c.heights.empty()) throw std::invalid_argument("at least one height is required");
  const i64 floor = (c.subcommand == "predict" || c.subcommand == "compare" || c.subcommand == "fit") ? 3 : 1;
  const CountOptions defaults;
  const i64 ceiling = c.method == Method::direct ? defaults.direct_ceiling : defaults.torsor_ceiling;
  for (i64 B : c.heights) {
    if (B < floor) throw std::invalid_argument("heights must be >= " + std::to_string(floor));
    if (c.subcommand != "predict" && B > ceiling) {
      throw std::invalid_argument("height " + std::to_string(B) + " exceeds the " + to_string(c.method) +
                                  " ceiling " + std::to_string(ceiling));
    }
  }
  if (c.subcommand == "enumerate" && c.heights.size() != 1) {
    throw std::invalid_argument("enumerate takes exactly one height");
  }
  if (c.subcommand == "fit" && c.heights.size() < 5) throw std::invalid_argument("fit needs at least five heights");
  if (c.prime_limit < 2) throw std::invalid_argument("prime limit must be >= 2");
  if (!(c.omega.cutoff >= 2.0)) throw std::invalid_argument("cutoff must be >= 2");
  if (!(c.omega.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (c.workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (c.constant && !(*c.constant > 0.0 && std::isfinite(*c.constant))) {
    throw std::invalid_argument("constant must be positive");
  }
  if (c.format == OutputFormat::csv &&
      (c.subcommand == "constants" || c.subcommand == "verify")) {
    throw std::invalid_argument(c.subcommand + " only writes JSON");
  }
}

FitResult fit_counts(const std::vector<i64>& heights, const std::vector<i64>& counts) {
  if (heights.size() != counts.size() || heights.size() < 5) {
    throw std::invalid_argument("fit_counts: need at least five (height, count) pairs");
  }
  const auto n = static_cast<Eigen::Index>(heights.size());
  Eigen::MatrixXd X(n, 5);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double B = static_cast<double>(heights[static_cast<std::size_t>(i)]);
    const double L = std::log(B);
    double p = B;
    for (int k = 0; k < 5; ++k, p *= L) X(i, k) = p;
    y(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]);
  }
  // Column scaling keeps the QR well conditioned across powers of log B.
  const Eigen::VectorXd scale = X.colwise().norm().transpose();
  const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd beta = Xs.colPivHouseholderQr().solve(y).cwiseQuotient(scale);
  FitResult f;
  f.coefficients.assign(beta.data(), beta.data() + beta.size());
  f.leading = f.coefficients.back();
  f.residual_norm = (X * beta - y).norm();
  return f;
}

int run(const RunConfig& c, std::ostream& out) {
  validate(c);
  if (c.subcommand == "count") return run_count(c, out);
  if (c.subcommand == "enumerate") return run_enumerate(c, out);
  if (c.subcommand == "constants") return run_constants(c, out);
  if (c.subcommand == "verify") return run_verify(c, out);
  if (c.subcommand == "predict") return run_predict(c, out);
  if (c.subcommand == "compare") return run_compare(c, out);
  return run_fit(c, out);
}

}  // namespace dp5
