// ddtool: command-line front end for duality-diagram analyses.

#include <cstdlib>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "ddiag/run.hpp"
#include "json.hpp"

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("ddtool");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("DDTOOL_LOG");
  const std::string value = level ? level : "off";
  if (value == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (value == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::off);
  }
}

int fail(std::string_view name, const std::string& message, int code) {
  nlohmann::json line = {{"error", std::string(name)}, {"message", message}, {"exit_code", code}};
  std::cerr << line.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Duality-diagram multivariate analysis"};
  app.require_subcommand(1);

  std::string method;
  std::vector<std::string> inputs;
  std::string weights;
  int rank = -1;
  std::string basis = "rv";
  std::string out_dir = ".";
  bool plots = false;
  std::uint64_t seed = 0;

  const char* descriptions[][2] = {
      {"pca", "principal components analysis (Q = I, D = row weights)"},
      {"pca_std", "PCA on standardized variables (Q = 1/variance)"},
      {"ca", "correspondence analysis of a contingency table"},
      {"pcaiv", "PCA with respect to instrumental variables (explanatory, response)"},
      {"rv", "pairwise RV and COVV coefficients between tables"},
      {"statis", "STATIS compromise of several tables"},
  };
  for (const auto& [name, help] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", inputs, "input CSV table (repeatable)")->required();
    sub->add_option("--weights", weights, "CSV of row weights (id, weight)");
    sub->add_option("--rank", rank, "number of components to report")->check(CLI::NonNegativeNumber);
    sub->add_option("--statis-basis", basis, "matrix used for STATIS weights")
        ->check(CLI::IsMember({"covv", "rv"}));
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--plots", plots, "write SVG figures");
    sub->add_option("--seed", seed, "seed recorded for randomized utilities");
    sub->final_callback([&method, sub] { method = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("UsageError", e.what(), 2);
  }

  ddiag::AnalysisConfig config;
  config.method = *ddiag::parse_method(method);
  for (const auto& in : inputs) config.inputs.emplace_back(in);
  if (!weights.empty()) config.weights = weights;
  if (rank >= 0) config.rank = rank;
  config.statis_basis = basis == "covv" ? ddiag::StatisBasis::covv : ddiag::StatisBasis::rv;
  config.output_dir = out_dir;
  config.emit_plots = plots;
  config.seed = seed;

  try {
    spdlog::info("{} on {} input(s)", method, config.inputs.size());
    const ddiag::RunReport report = ddiag::run(config);
    for (const auto& w : report.warnings) spdlog::warn("{}", w);
    spdlog::info("wrote {} file(s) to {}", report.files.size(), out_dir);
  } catch (const ddiag::Error& e) {
    return fail(e.name(), e.what(), ddiag::exit_code(e.code()));
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 1);
  }
  return 0;
}
