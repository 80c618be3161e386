#include <pybind11/eigen.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ddiag/comparison.hpp"
#include "ddiag/methods.hpp"
#include "ddiag/run.hpp"

namespace py = pybind11;
using namespace ddiag;

namespace {

SpdMatrix metric_or_identity(const std::optional<Matrix>& m, Eigen::Index dim) {
  return m ? SpdMatrix(*m) : SpdMatrix::identity(dim);
}

StatisBasis parse_basis(const std::string& name) {
  if (name == "rv") return StatisBasis::rv;
  if (name == "covv") return StatisBasis::covv;
  throw Error(ErrorCode::InvalidConfig, "statis basis must be 'rv' or 'covv', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_ddiag, m) {
  m.doc() = "Duality-diagram (X, Q, D) analyses: PCA, CA, PCA-IV, RV/COVV and STATIS.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result(
      [&m] { return py::object(py::exception<Error>(m, "DdiagError", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("code") = std::string(e.name());
      inst.attr("exit_code") = exit_code(e.code());
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  m.def("sym_eigen", [](const Matrix& a) {
    SymEigen e = sym_eigen(a);
    return py::make_tuple(e.values, e.vectors);
  }, "Eigenvalues (non-increasing) and orthonormal eigenvectors of a symmetric matrix.",
        py::arg("a"));
  m.def("spd_power", [](const Matrix& q, double a) { return spd_power(SpdMatrix(q), a); },
        "Q^a for symmetric positive definite Q.", py::arg("q"), py::arg("a"));

  py::class_<DiagramEigen>(m, "DiagramEigen")
      .def_readonly("values", &DiagramEigen::values)
      .def_readonly("col_vectors", &DiagramEigen::col_vectors)
      .def_readonly("row_vectors", &DiagramEigen::row_vectors)
      .def_readonly("rank", &DiagramEigen::rank);

  py::class_<OperatorEigen>(m, "OperatorEigen")
      .def_readonly("values", &OperatorEigen::values)
      .def_readonly("vectors", &OperatorEigen::vectors)
      .def_readonly("rank", &OperatorEigen::rank);

  py::class_<Triplet>(m, "Triplet")
      .def(py::init([](const Matrix& x, std::optional<Matrix> q, std::optional<Matrix> d) {
             return Triplet(x, metric_or_identity(q, x.cols()), metric_or_identity(d, x.rows()));
           }),
           py::arg("x"), py::arg("q") = py::none(), py::arg("d") = py::none())
      .def_property_readonly("x", &Triplet::x)
      .def_property_readonly("q", [](const Triplet& t) { return t.q().base(); })
      .def_property_readonly("d", [](const Triplet& t) { return t.d().base(); })
      .def_property_readonly("shape", [](const Triplet& t) { return py::make_tuple(t.rows(), t.cols()); })
      .def("crossprod_v", &crossprod_v)
      .def("gram_w", &gram_w)
      .def("eigen", &diagram_eigen)
      .def("total_inertia", &total_inertia);

  m.def("pca", [](const Matrix& x, std::optional<Vector> weights, bool standardize) {
    return pca_triplet(x, weights ? *weights : uniform_weights(x.rows()), standardize);
  }, "PCA triplet: centered X, Q = I or 1/variance, D = diag(weights).",
        py::arg("x"), py::arg("weights") = py::none(), py::arg("standardize") = false);
  m.def("principal_components", &principal_components, py::arg("triplet"), py::arg("eigen"),
        py::arg("k"));

  py::class_<CaTriplet>(m, "CaTriplet")
      .def_readonly("triplet", &CaTriplet::triplet)
      .def_readonly("r", &CaTriplet::r)
      .def_readonly("c", &CaTriplet::c);
  m.def("ca", [](const Matrix& counts) { return ca_triplet(ContingencyTable(counts)); },
        "Correspondence analysis triplet of a contingency table.", py::arg("counts"));
  m.def("chi2", [](const Matrix& counts) { return ca_chi2(ContingencyTable(counts)); },
        py::arg("counts"));

  py::class_<PcaivResult>(m, "PcaivResult")
      .def_readonly("r_metric", &PcaivResult::r_metric)
      .def_readonly("b", &PcaivResult::b)
      .def_readonly("m_metric", &PcaivResult::m_metric)
      .def_readonly("eigen", &PcaivResult::eigen)
      .def_readonly("effective_rank", &PcaivResult::effective_rank)
      .def_readonly("spectrum", &PcaivResult::spectrum);
  m.def("pcaiv",
        [](const Matrix& x, const Matrix& y, std::optional<Matrix> q, std::optional<Matrix> d,
           Eigen::Index rank) {
          return pcaiv(x, y, metric_or_identity(q, y.cols()),
                       d ? SpdMatrix(*d) : SpdMatrix::diagonal(uniform_weights(x.rows())), rank);
        },
        "PCA of y (metric q) with respect to the instrumental variables x.", py::arg("x"),
        py::arg("y"), py::arg("q") = py::none(), py::arg("d") = py::none(), py::arg("rank") = 1);

  m.def("covv", [](const Matrix& w1, const Matrix& w2, const Matrix& d) {
    return covv(w1, w2, SpdMatrix(d));
  }, py::arg("w1"), py::arg("w2"), py::arg("d"));
  m.def("rv", [](const Matrix& w1, const Matrix& w2, const Matrix& d) {
    return rv(w1, w2, SpdMatrix(d));
  }, py::arg("w1"), py::arg("w2"), py::arg("d"));

  py::class_<StatisResult>(m, "StatisResult")
      .def_readonly("covv_matrix", &StatisResult::covv_matrix)
      .def_readonly("rv_matrix", &StatisResult::rv_matrix)
      .def_readonly("weights", &StatisResult::weights)
      .def_readonly("basis_eigenvalues", &StatisResult::basis_eigenvalues)
      .def_readonly("interstructure", &StatisResult::interstructure)
      .def_readonly("compromise_w", &StatisResult::compromise_w)
      .def_readonly("compromise_eigen", &StatisResult::compromise_eigen)
      .def_readonly("distances_to_compromise", &StatisResult::distances_to_compromise);
  m.def("statis",
        [](const std::vector<Triplet>& diagrams, std::vector<std::string> labels,
           const std::string& basis) {
          if (diagrams.empty()) throw Error(ErrorCode::InvalidConfig, "statis needs diagrams");
          SpdMatrix d = diagrams.front().d();
          return statis(DiagramCollection(std::move(d), diagrams, std::move(labels)),
                        parse_basis(basis));
        },
        "STATIS compromise of diagrams sharing one row metric.", py::arg("diagrams"),
        py::arg("labels") = std::vector<std::string>{}, py::arg("basis") = "rv");

  m.def("run",
        [](const std::string& method, const std::vector<std::filesystem::path>& inputs,
           const std::filesystem::path& output_dir, std::optional<std::filesystem::path> weights,
           std::optional<int> rank, const std::string& statis_basis, bool plots,
           std::uint64_t seed) {
          const auto parsed = parse_method(method);
          if (!parsed) throw Error(ErrorCode::InvalidConfig, "unknown method '" + method + "'");
          AnalysisConfig cfg;
          cfg.method = *parsed;
          cfg.inputs = inputs;
          cfg.output_dir = output_dir;
          cfg.weights = weights;
          cfg.rank = rank;
          cfg.statis_basis = parse_basis(statis_basis);
          cfg.emit_plots = plots;
          cfg.seed = seed;
          const RunReport rep = run(cfg);
          py::dict out;
          out["files"] = rep.files;
          out["warnings"] = rep.warnings;
          return out;
        },
        "Run one analysis end to end and write its result files.", py::arg("method"),
        py::arg("inputs"), py::arg("output_dir"), py::arg("weights") = py::none(),
        py::arg("rank") = py::none(), py::arg("statis_basis") = "rv", py::arg("plots") = false,
        py::arg("seed") = 0);

  m.attr("SUMMARY_SCHEMA_VERSION") = kSummarySchemaVersion;
}
