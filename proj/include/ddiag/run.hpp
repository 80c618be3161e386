#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddiag/comparison.hpp"

namespace ddiag {

enum class Method { pca, pca_std, ca, pcaiv, rv, statis };

std::optional<Method> parse_method(std::string_view name);
std::string_view method_name(Method m);

struct AnalysisConfig {
  Method method = Method::pca;
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> weights;
  std::optional<int> rank;
  StatisBasis statis_basis = StatisBasis::rv;
  std::filesystem::path output_dir = ".";
  bool emit_plots = false;
  std::uint64_t seed = 0;
};

// Version of the summary.json layout.
inline constexpr int kSummarySchemaVersion = 1;

struct RunReport {
  std::vector<std::string> files;     // written, relative to output_dir, sorted
  std::vector<std::string> warnings;
};

// Runs one analysis and writes its result files into config.output_dir
// (created if missing). Throws ddiag::Error on any failure.
RunReport run(const AnalysisConfig& config);

}  // namespace ddiag
