#include "ddiag/run.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "ddiag/io.hpp"
#include "ddiag/methods.hpp"
#include "ddiag/plots.hpp"

namespace ddiag {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir_.string() + "': " + ec.message());
  }

  void table(const std::string& name, const std::vector<std::string>& rows,
             const std::vector<std::string>& cols, const Matrix& values,
             std::string_view corner = "id") {
    io::write_table(dir_ / name, rows, cols, values, corner);
    record(name);
  }

  void text(const std::string& name, std::string_view body) {
    io::write_text(dir_ / name, body);
    record(name);
  }

  void warn(std::string message) {
    spdlog::debug("warning: {}", message);
    warnings_.push_back(std::move(message));
  }

  const std::vector<std::string>& warnings() const { return warnings_; }

  std::vector<std::string> files() const {
    std::vector<std::string> out(files_.begin(), files_.end());
    return out;
  }

 private:
  void record(const std::string& name) {
    spdlog::debug("wrote {}", (dir_ / name).string());
    files_.insert(name);
  }

  fs::path dir_;
  std::set<std::string> files_;
  std::vector<std::string> warnings_;
};

std::vector<std::string> axis_names(Eigen::Index k) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < k; ++i) out.push_back("Axis" + std::to_string(i + 1));
  return out;
}

void write_eigenvalues(OutputDir& out, const Vector& values) {
  const double total = values.sum();
  Matrix rows(values.size(), 3);
  double cumulative = 0.0;
  std::vector<std::string> ids;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double pct = total > 0.0 ? 100.0 * values(i) / total : 0.0;
    cumulative += pct;
    rows(i, 0) = values(i);
    rows(i, 1) = pct;
    rows(i, 2) = cumulative;
    ids.push_back(std::to_string(i + 1));
  }
  out.table("eigenvalues.csv", ids, {"eigenvalue", "percent_inertia", "cumulative_percent"}, rows,
            "index");
}

// Column k scaled by sqrt(values[k]).
Matrix scale_columns(const Matrix& vectors, const Vector& values, Eigen::Index k) {
  return vectors.leftCols(k) * values.head(k).cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

Eigen::Index components_to_report(const AnalysisConfig& config, Eigen::Index rank, OutputDir& out) {
  if (!config.rank) return rank;
  if (*config.rank < 0) throw Error(ErrorCode::InvalidConfig, "--rank must be nonnegative");
  if (*config.rank > rank) {
    out.warn("requested rank " + std::to_string(*config.rank) + " exceeds effective rank " +
             std::to_string(rank) + "; reporting " + std::to_string(rank) + " components");
    return rank;
  }
  return *config.rank;
}

Vector load_weights(const AnalysisConfig& config, const std::vector<std::string>& row_ids) {
  const auto n = static_cast<Eigen::Index>(row_ids.size());
  if (!config.weights) return uniform_weights(n);
  const io::TableFile file = io::load_table(*config.weights, io::TableKind::continuous);
  if (file.values.cols() != 1) {
    throw Error(ErrorCode::InvalidConfig, "weights file must have exactly one value column");
  }
  std::map<std::string, double> by_id;
  for (std::size_t i = 0; i < file.row_ids.size(); ++i) {
    by_id[file.row_ids[i]] = file.values(static_cast<Eigen::Index>(i), 0);
  }
  if (by_id.size() != row_ids.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weights file has " + std::to_string(by_id.size()) +
                                                  " rows, table has " +
                                                  std::to_string(row_ids.size()));
  }
  Vector w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto it = by_id.find(row_ids[static_cast<std::size_t>(i)]);
    if (it == by_id.end()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "weights file has no entry for row '" + row_ids[static_cast<std::size_t>(i)] + "'");
    }
    if (!(it->second > 0.0)) {
      throw Error(ErrorCode::BadWeights, "weight for row '" + it->first + "' is not positive");
    }
    w(i) = it->second;
  }
  return w / w.sum();
}

void require_arity(const AnalysisConfig& config) {
  const std::size_t k = config.inputs.size();
  switch (config.method) {
    case Method::pca:
    case Method::pca_std:
    case Method::ca:
      if (k != 1) throw Error(ErrorCode::InvalidConfig, "this method takes exactly one --input");
      break;
    case Method::pcaiv:
      if (k != 2) {
        throw Error(ErrorCode::InvalidConfig,
                    "pcaiv takes exactly two --input tables (explanatory, then response)");
      }
      break;
    case Method::rv:
    case Method::statis:
      if (k < 2) throw Error(ErrorCode::InvalidConfig, "this method needs at least two --input tables");
      break;
  }
}

std::vector<std::string> study_labels(const std::vector<fs::path>& inputs) {
  std::vector<std::string> labels;
  std::set<std::string> used;
  for (const auto& path : inputs) {
    std::string base = path.stem().string();
    if (base.empty()) base = "study";
    std::string label = base;
    for (int suffix = 2; used.count(label) > 0; ++suffix) label = base + "_" + std::to_string(suffix);
    used.insert(label);
    labels.push_back(label);
  }
  return labels;
}

void require_same_rows(const std::vector<io::TableFile>& tables,
                       const std::vector<fs::path>& inputs) {
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (tables[i].row_ids != tables[0].row_ids) {
      throw Error(ErrorCode::DimensionMismatch, "'" + inputs[i].string() +
                                                    "' does not have the same row ids, in the same "
                                                    "order, as '" +
                                                    inputs[0].string() + "'");
    }
  }
}

ordered_json inputs_json(const AnalysisConfig& config, const std::vector<io::TableFile>& tables) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    arr.push_back({{"path", config.inputs[i].generic_string()},
                   {"rows", tables[i].values.rows()},
                   {"cols", tables[i].values.cols()}});
  }
  return arr;
}

void factor_map(const AnalysisConfig& config, OutputDir& out, const Matrix& scores,
                const std::vector<std::string>& labels, Eigen::Index rank, const char* title) {
  if (!config.emit_plots) return;
  if (rank < 2 || scores.cols() < 2) {
    out.warn("factor_map.svg skipped: rank " + std::to_string(rank) + " is below 2");
    return;
  }
  out.text("factor_map.svg", plots::scatter_svg(scores, labels, title, "Axis 1", "Axis 2"));
}

void run_pca(const AnalysisConfig& config, OutputDir& out, ordered_json& summary) {
  const io::TableFile table = io::load_table(config.inputs[0], io::TableKind::continuous);
  const Vector weights = load_weights(config, table.row_ids);
  const Triplet t = pca_triplet(table.values, weights, config.method == Method::pca_std);
  const DiagramEigen e = diagram_eigen(t);
  const Eigen::Index k = components_to_report(config, e.rank, out);

  write_eigenvalues(out, e.values);
  out.table("row_scores.csv", table.row_ids, axis_names(k), principal_components(t, e, k));
  out.table("col_loadings.csv", table.col_ids, axis_names(k), scale_columns(e.col_vectors, e.values, k));

  summary["inputs"] = inputs_json(config, {table});
  summary["n_rows"] = t.rows();
  summary["n_cols"] = t.cols();
  summary["total_inertia"] = io::round_printed(total_inertia(t));
  summary["rank"] = e.rank;
  summary["components"] = k;

  if (config.emit_plots) {
    out.text("scree.svg", plots::scree_svg(e.values, "Eigenvalues"));
    factor_map(config, out, principal_components(t, e, std::min<Eigen::Index>(2, e.rank)),
               table.row_ids, e.rank, "Rows on axes 1-2");
  }
}

void run_ca(const AnalysisConfig& config, OutputDir& out, ordered_json& summary) {
  const io::TableFile table = io::load_table(config.inputs[0], io::TableKind::counts);
  if (config.weights) out.warn("--weights is ignored by ca (row weights are the row marginals)");
  const ContingencyTable counts(table.values);
  ordered_json dropped_rows = ordered_json::array();
  ordered_json dropped_cols = ordered_json::array();
  for (auto i : counts.dropped_rows()) {
    const auto& id = table.row_ids[static_cast<std::size_t>(i)];
    out.warn("dropped row '" + id + "' with zero marginal count");
    dropped_rows.push_back(id);
  }
  for (auto j : counts.dropped_cols()) {
    const auto& id = table.col_ids[static_cast<std::size_t>(j)];
    out.warn("dropped column '" + id + "' with zero marginal count");
    dropped_cols.push_back(id);
  }
  std::vector<std::string> row_ids, col_ids;
  for (auto i : counts.kept_rows()) row_ids.push_back(table.row_ids[static_cast<std::size_t>(i)]);
  for (auto j : counts.kept_cols()) col_ids.push_back(table.col_ids[static_cast<std::size_t>(j)]);

  const CaTriplet ca = ca_triplet(counts);
  const DiagramEigen e = diagram_eigen(ca.triplet);
  const Eigen::Index k = components_to_report(config, e.rank, out);

  write_eigenvalues(out, e.values);
  out.table("row_scores.csv", row_ids, axis_names(k), principal_components(ca.triplet, e, k));
  out.table("col_loadings.csv", col_ids, axis_names(k), scale_columns(e.col_vectors, e.values, k));

  summary["inputs"] = inputs_json(config, {table});
  summary["n_rows"] = ca.triplet.rows();
  summary["n_cols"] = ca.triplet.cols();
  summary["total_inertia"] = io::round_printed(total_inertia(ca.triplet));
  summary["rank"] = e.rank;
  summary["components"] = k;
  summary["grand_total"] = counts.total();
  summary["chi2"] = io::round_printed(ca_chi2(counts));
  summary["dropped_rows"] = dropped_rows;
  summary["dropped_cols"] = dropped_cols;

  if (config.emit_plots) {
    out.text("scree.svg", plots::scree_svg(e.values, "Eigenvalues"));
    factor_map(config, out, principal_components(ca.triplet, e, std::min<Eigen::Index>(2, e.rank)),
               row_ids, e.rank, "Rows on axes 1-2");
  }
}

void run_pcaiv(const AnalysisConfig& config, OutputDir& out, ordered_json& summary) {
  std::vector<io::TableFile> tables;
  for (const auto& p : config.inputs) tables.push_back(io::load_table(p, io::TableKind::continuous));
  require_same_rows(tables, config.inputs);
  const Vector weights = load_weights(config, tables[0].row_ids);
  const SpdMatrix d = SpdMatrix::diagonal(weights);
  const Matrix x = center_columns(tables[0].values, d);
  const Matrix y = center_columns(tables[1].values, d);
  const SpdMatrix q = SpdMatrix::identity(y.cols());

  const Eigen::Index available = pcaiv(x, y, q, d, 0).effective_rank;
  const Eigen::Index rank_q = config.rank ? *config.rank : available;
  const PcaivResult res = pcaiv(x, y, q, d, rank_q);

  write_eigenvalues(out, res.spectrum);
  const Matrix scores = scale_columns(res.eigen.row_vectors, res.eigen.values, rank_q);
  out.table("row_scores.csv", tables[0].row_ids, axis_names(rank_q), scores);
  out.table("col_loadings.csv", tables[0].col_ids, axis_names(rank_q), res.b);

  const double fitted = res.spectrum.sum();
  const double response = total_inertia(Triplet(y, q, d));
  summary["inputs"] = inputs_json(config, tables);
  summary["n_rows"] = x.rows();
  summary["n_cols"] = x.cols();
  summary["total_inertia"] = io::round_printed(fitted);
  summary["rank"] = res.effective_rank;
  summary["components"] = rank_q;
  summary["response_inertia"] = io::round_printed(response);
  summary["redundancy"] = io::round_printed(response > 0.0 ? fitted / response : 0.0);
  summary["metric_positive_definite"] = res.fitted_triplet.has_value();

  if (config.emit_plots) {
    out.text("scree.svg", plots::scree_svg(res.spectrum, "Eigenvalues"));
    factor_map(config, out, scores, tables[0].row_ids, rank_q, "Rows on axes 1-2");
  }
}

void run_comparison(const AnalysisConfig& config, OutputDir& out, ordered_json& summary) {
  std::vector<io::TableFile> tables;
  for (const auto& p : config.inputs) tables.push_back(io::load_table(p, io::TableKind::continuous));
  require_same_rows(tables, config.inputs);
  const std::vector<std::string> labels = study_labels(config.inputs);
  const Vector weights = load_weights(config, tables[0].row_ids);
  const SpdMatrix d = SpdMatrix::diagonal(weights);

  std::vector<Triplet> diagrams;
  ordered_json inertia = ordered_json::object();
  for (std::size_t i = 0; i < tables.size(); ++i) {
    diagrams.emplace_back(center_columns(tables[i].values, d),
                          SpdMatrix::identity(tables[i].values.cols()), d);
    inertia[labels[i]] = io::round_printed(total_inertia(diagrams.back()));
  }
  const DiagramCollection coll(d, std::move(diagrams), labels);

  summary["inputs"] = inputs_json(config, tables);
  summary["n_rows"] = d.dim();
  summary["studies"] = labels;
  summary["study_inertia"] = inertia;

  if (config.method == Method::rv) {
    const CoefficientMatrices cm = coefficient_matrices(coll);
    out.table("rv_matrix.csv", labels, labels, cm.rv, "study");
    out.table("covv_matrix.csv", labels, labels, cm.covv, "study");
    const SymEigen re = sym_eigen(cm.rv);
    summary["rank"] = effective_rank(re.values);
    if (config.emit_plots) {
      out.text("scree.svg", plots::scree_svg(re.values, "RV matrix eigenvalues"));
      const Eigen::Index axes = std::min<Eigen::Index>(2, re.values.size());
      out.text("interstructure.svg",
               plots::scatter_svg(scale_columns(re.vectors, re.values, axes), labels,
                                  "Studies on RV axes 1-2", "Axis 1", "Axis 2"));
      out.text("rv_heatmap.svg", plots::heatmap_svg(cm.rv, labels, "RV coefficients"));
    }
    return;
  }

  const StatisResult res = statis(coll, config.statis_basis);
  out.table("rv_matrix.csv", labels, labels, res.rv_matrix, "study");
  out.table("covv_matrix.csv", labels, labels, res.covv_matrix, "study");
  Matrix weight_table(res.weights.size(), 2);
  weight_table.col(0) = res.weights;
  weight_table.col(1) = res.distances_to_compromise;
  out.table("statis_weights.csv", labels, {"weight", "rv_to_compromise"}, weight_table, "study");

  const OperatorEigen& ce = res.compromise_eigen;
  const Eigen::Index k = components_to_report(config, ce.rank, out);
  write_eigenvalues(out, ce.values);
  out.table("row_scores.csv", tables[0].row_ids, axis_names(k), scale_columns(ce.vectors, ce.values, k));

  summary["basis"] = config.statis_basis == StatisBasis::rv ? "rv" : "covv";
  ordered_json w = ordered_json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    w[labels[i]] = io::round_printed(res.weights(static_cast<Eigen::Index>(i)));
  }
  summary["weights"] = w;
  summary["total_inertia"] = io::round_printed(ce.values.sum());
  summary["rank"] = ce.rank;
  summary["components"] = k;

  if (config.emit_plots) {
    out.text("scree.svg", plots::scree_svg(ce.values, "Compromise eigenvalues"));
    factor_map(config, out, scale_columns(ce.vectors, ce.values, std::min<Eigen::Index>(2, ce.rank)),
               tables[0].row_ids, ce.rank, "Compromise rows on axes 1-2");
    out.text("interstructure.svg", plots::scatter_svg(res.interstructure, labels,
                                                      "Studies on RV axes 1-2", "Axis 1",
                                                      "Axis 2"));
    out.text("rv_heatmap.svg", plots::heatmap_svg(res.rv_matrix, labels, "RV coefficients"));
  }
}

}  // namespace

std::optional<Method> parse_method(std::string_view name) {
  if (name == "pca") return Method::pca;
  if (name == "pca_std") return Method::pca_std;
  if (name == "ca") return Method::ca;
  if (name == "pcaiv") return Method::pcaiv;
  if (name == "rv") return Method::rv;
  if (name == "statis") return Method::statis;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::pca: return "pca";
    case Method::pca_std: return "pca_std";
    case Method::ca: return "ca";
    case Method::pcaiv: return "pcaiv";
    case Method::rv: return "rv";
    case Method::statis: return "statis";
  }
  return "unknown";
}

RunReport run(const AnalysisConfig& config) {
  require_arity(config);
  spdlog::debug("running {} on {} input(s)", method_name(config.method), config.inputs.size());
  OutputDir out(config.output_dir);

  ordered_json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["method"] = std::string(method_name(config.method));
  summary["seed"] = config.seed;

  switch (config.method) {
    case Method::pca:
    case Method::pca_std: run_pca(config, out, summary); break;
    case Method::ca: run_ca(config, out, summary); break;
    case Method::pcaiv: run_pcaiv(config, out, summary); break;
    case Method::rv:
    case Method::statis: run_comparison(config, out, summary); break;
  }

  summary["warnings"] = out.warnings();
  std::vector<std::string> files = out.files();
  files.push_back("summary.json");
  std::sort(files.begin(), files.end());
  summary["files"] = files;
  out.text("summary.json", summary.dump(2) + "\n");

  spdlog::debug("wrote {} file(s) to {}", files.size(), config.output_dir.string());
  return RunReport{files, out.warnings()};
}

}  // namespace ddiag
