#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dp5/cli.hpp"

int main(int argc, char** argv) {
  using namespace dp5;
  CLI::App app{"Rational points of bounded height on the quintic del Pezzo surface"};
  app.require_subcommand(1);

  RunConfig config;
  std::string method = "torsor", strategy = "full", suite = "all", format = "json";
  double constant = 0.0;

  const std::map<std::string, std::string> help{
      {"count", "count points of height <= B"},
      {"enumerate", "list points of height <= B"},
      {"constants", "leading constant c = alpha * omega * theta1"},
      {"verify", "run verification suites"},
      {"predict", "c B (log B)^4"},
      {"compare", "observed counts against the prediction"},
      {"fit", "least-squares fit of N(B) by B * quartic(log B)"}};

  for (const auto& name : kSubcommands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("-o,--output", config.output, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-w,--workers", config.workers, "worker threads (0: DP5_WORKERS or all cores)");
    if (name != "constants" && name != "verify") {
      sub->add_option("-B,--height,--heights", config.heights, "height bound(s), comma separated")
          ->delimiter(',');
    }
    if (name == "count" || name == "enumerate" || name == "compare" || name == "fit") {
      sub->add_option("-m,--method", method, "torsor or direct")->check(CLI::IsMember({"torsor", "direct"}));
      sub->add_option("--strategy", strategy, "full or weyl_reduced (torsor only)")
          ->check(CLI::IsMember({"full", "weyl_reduced"}));
    }
    if (name == "constants" || name == "predict" || name == "compare" || name == "fit") {
      sub->add_option("-P,--prime-limit", config.prime_limit, "primes up to P in theta1");
      sub->add_option("-W,--cutoff", config.omega.cutoff, "cutoff W for omega");
      sub->add_option("--tolerance", config.omega.tolerance, "relative tolerance per quadrature piece");
      sub->add_option("--depth", config.omega.max_depth, "adaptive bisection depth");
    }
    if (name == "predict" || name == "compare" || name == "fit") {
      sub->add_option("-c,--constant", constant, "use this c instead of computing it");
    }
    if (name == "constants") {
      sub->add_option("--samples", config.samples, "Monte Carlo samples for the W = 2 cross-check");
    }
    if (name == "verify") {
      sub->add_option("-s,--suite", suite, "torsor, lattice, moebius, weyl or all")
          ->check(CLI::IsMember({"torsor", "lattice", "moebius", "weyl", "all"}));
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    config.method = parse_method(method);
    config.strategy = parse_strategy(strategy);
    config.suite = parse_suite(suite);
    config.format = parse_format(format);
    if (constant != 0.0) config.constant = constant;
    validate(config);

    if (config.output.empty() || config.output == "-") return run(config, std::cout);
    std::ofstream file(config.output);
    if (!file) {
      std::cerr << "dp5: cannot open " << config.output << '\n';
      return 2;
    }
    return run(config, file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "dp5: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dp5: " << e.what() << '\n';
    return 3;
  }
}
