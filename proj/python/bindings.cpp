#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "comblat/pipeline.hpp"

namespace py = pybind11;

namespace {

using namespace comblat;

std::vector<OpoSpec> to_specs(const std::vector<std::pair<std::int64_t, int>>& specs) {
    std::vector<OpoSpec> out;
    out.reserve(specs.size());
    for (const auto& [delta_m, copies] : specs) out.push_back({delta_m, copies});
    return out;
}

CombWindow to_window(const std::pair<std::int64_t, std::int64_t>& w) {
    return {w.first, w.second};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "frequency-comb cluster-state core (C++)";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<UnsupportedOrder>(m, "UnsupportedOrderError", base);
    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefiniteError", base);

    m.def("macronode_of", &macronode_of, py::arg("n"), "Macronode index m = (-1)^n n.");
    m.def("frequency_of", &frequency_of, py::arg("m"), "Frequency index of macronode m.");
    m.def(
        "pump_indices",
        [](std::int64_t delta_m, int copies) {
            const PumpIndices p = pump_indices({delta_m, copies});
            return std::make_pair(p.y, p.z);
        },
        py::arg("delta_m"), py::arg("copies") = 1,
        "Pump indices (p_y, p_z) of one OPO.");
    m.def(
        "compound_to_frequency",
        [](std::int64_t mm, int k, int copies) { return compound_to_frequency({mm, k}, copies); },
        py::arg("m"), py::arg("k"), py::arg("copies"));
    m.def(
        "frequency_to_compound",
        [](std::int64_t n, int copies) {
            const CompoundIndex c = frequency_to_compound(n, copies);
            return std::make_pair(c.m, c.k);
        },
        py::arg("n"), py::arg("copies"));

    py::class_<QumodeId>(m, "QumodeId")
        .def_readonly("opo", &QumodeId::opo)
        .def_property_readonly("pol", [](const QumodeId& id) { return to_string(id.pol); })
        .def_readonly("n", &QumodeId::n)
        .def("__repr__", [](const QumodeId& id) {
            return "QumodeId(opo=" + std::to_string(id.opo) + ", pol=" + to_string(id.pol) +
                   ", n=" + std::to_string(id.n) + ")";
        });

    py::class_<HGraph>(m, "HGraph")
        .def_property_readonly("num_modes", &HGraph::num_modes)
        .def_readonly("modes", &HGraph::modes)
        .def_readonly("edges", &HGraph::edges)
        .def_readonly("unmatched", &HGraph::unmatched)
        .def("adjacency", [](const HGraph& g) { return adjacency_matrix(g); },
             "0/1 adjacency matrix G as a scipy sparse matrix.")
        .def("macronodes", [](const HGraph& g) {
            std::vector<std::tuple<std::int64_t, std::int64_t, std::vector<int>>> out;
            for (const auto& node : macronode_partition(g))
                out.emplace_back(node.m, node.n, node.members);
            return out;
        });

    m.def(
        "build_hgraph",
        [](const std::vector<std::pair<std::int64_t, int>>& specs,
           const std::pair<std::int64_t, std::int64_t>& window) {
            return build_hgraph(to_specs(specs), to_window(window));
        },
        py::arg("opos"), py::arg("window"),
        "Build the H-graph for [(delta_m, copies), ...] over window (n_min, n_max).");

    m.def(
        "sylvester_splitter", [](int order) { return sylvester_splitter(order).matrix; },
        py::arg("order"));

    py::class_<BlockInterferometer>(m, "BlockInterferometer")
        .def_readonly("matrix", &BlockInterferometer::matrix);

    m.def(
        "build_interferometer",
        [](const HGraph& g, const std::optional<Eigen::MatrixXd>& splitter) {
            const BalancedSplitter block =
                splitter ? user_splitter(*splitter) : sylvester_splitter(2 * g.opo_count());
            return build_block_interferometer(block, g);
        },
        py::arg("hgraph"), py::arg("splitter") = std::nullopt,
        "Block interferometer R; Sylvester splitter of order 2D unless one is given.");

    py::class_<GraphState>(m, "GraphState")
        .def_readonly("z", &GraphState::z)
        .def_readonly("alpha", &GraphState::alpha)
        .def_property_readonly("num_modes", &GraphState::num_modes);

    m.def("initial_graph", &initial_graph, py::arg("hgraph"), py::arg("alpha"));
    m.def("expm_graph_oracle", &expm_graph_oracle, py::arg("hgraph"), py::arg("alpha"));
    m.def("apply_interferometer", &apply_interferometer, py::arg("state"), py::arg("r"));
    m.def("cluster_graph", &cluster_graph, py::arg("hgraph"), py::arg("r"), py::arg("alpha"));
    m.def("entangled_adjacency", &entangled_adjacency, py::arg("hgraph"), py::arg("r"));

    m.def(
        "covariance_from_graph",
        [](const GraphState& state) { return covariance_from_graph(state).sigma; },
        py::arg("state"), "Quadrature covariance, (q_1..q_N, p_1..p_N) ordering.");
    m.def(
        "symplectic_eigenvalues",
        [](const Eigen::MatrixXd& sigma) { return symplectic_eigenvalues({sigma}); },
        py::arg("sigma"));

    m.def(
        "nullifier_rows",
        [](double theta, const BlockInterferometer& r, const HGraph& g, double alpha) {
            return nullifier_rows(theta, r, g, alpha).rows;
        },
        py::arg("theta"), py::arg("r"), py::arg("hgraph"), py::arg("alpha"));
    m.def("nullifier_cov_analytic", &nullifier_cov_analytic, py::arg("theta"), py::arg("hgraph"),
          py::arg("alpha"));
    m.def(
        "nullifier_cov_numeric",
        [](const Eigen::MatrixXd& sigma, const SparseReal& rows, double theta) {
            return nullifier_cov_numeric({sigma}, {theta, rows});
        },
        py::arg("sigma"), py::arg("rows"), py::arg("theta") = 0.0);
    m.def(
        "two_tone_support",
        [](const SparseReal& rows, const HGraph& g) { return two_tone_support({0.0, rows}, g); },
        py::arg("rows"), py::arg("hgraph"));

    m.def("sample_quadratures", &sample_quadratures, py::arg("sigma"), py::arg("count"),
          py::arg("seed"), py::arg("workers") = 1);

    m.def(
        "run_json",
        [](const std::string& config_text, const std::string& out_dir) {
            const PipelineConfig config =
                parse_config(config_text, std::filesystem::current_path());
            const RunResult result =
                run_pipeline(config, out_dir.empty() ? std::filesystem::path{}
                                                     : std::filesystem::path(out_dir));
            return result.report.dump(2);
        },
        py::arg("config"), py::arg("out_dir") = std::string(),
        "Run the pipeline on a JSON config string; returns the report JSON.");
    m.def(
        "validate_json",
        [](const std::string& config_text) {
            return config_to_json(parse_config(config_text, std::filesystem::current_path()))
                .dump(2);
        },
        py::arg("config"), "Validate a JSON config string; returns the canonical echo.");
}
