#include "comblat/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace comblat {

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        sink_.emplace_back(name, dt.count());
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
};

std::vector<std::int64_t> lattice_offsets(const PipelineConfig& c) {
    std::vector<std::int64_t> offsets;
    offsets.reserve(c.opos.size());
    for (const auto& spec : c.opos) offsets.push_back(spec.delta_m);
    std::sort(offsets.begin(), offsets.end());
    return offsets;
}

bool same_edge_structure(const MacronodeGraph& a, const MacronodeGraph& b) {
    if (a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (a.edges[i].a != b.edges[i].a || a.edges[i].b != b.edges[i].b) return false;
    return true;
}

SparseReal sparse_part(const SparseComplex& z, bool imaginary) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(z.nonZeros()));
    for (int col = 0; col < z.outerSize(); ++col)
        for (SparseComplex::InnerIterator it(z, col); it; ++it) {
            const double v = imaginary ? it.value().imag() : it.value().real();
            if (v != 0.0)
                triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), v);
        }
    SparseReal m(z.rows(), z.cols());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

Json lattice_report_json(const LatticeReport& r) {
    Json j;
    j["dimensionality"] = r.dimensionality;
    j["offsets"] = r.offsets;
    j["interior_count"] = r.interior_nodes.size();
    j["boundary_count"] = r.boundary_nodes.size();
    j["boundary_macronodes"] = r.boundary_nodes;
    j["expected_edges"] = r.expected_edges;
    j["observed_edges"] = r.observed_edges;
    j["missing_edges"] = r.missing_edges;
    j["extra_edges"] = r.extra_edges;
    j["copy_components"] = r.copy_components;
    j["min_edge_weight"] = r.min_edge_weight;
    j["max_edge_weight"] = r.max_edge_weight;
    j["contiguous"] = r.contiguous;
    j["pass"] = r.pass;
    j["diagnostics"] = r.diagnostics;
    return j;
}

}  // namespace

bool RunState::pass() const {
    if (!lattice_pass || !adjacency_invariant) return false;
    if (two_tone_checked && !two_tone_pass) return false;
    if (dense_checked && !(nullifier_pass && purity_pass)) return false;
    if (sampled && !mc_pass) return false;
    return true;
}

RunState execute_stages(const PipelineConfig& config) {
    RunState s;
    s.config = config;
    StageClock clock(s.timings);

    clock.run("build", [&] {
        s.graph = build_hgraph(config.opos, config.window);
        auto [matched, ok] = matching_projector_check(s.graph);
        if (!ok) throw NotAMatching("constructed H-graph failed the matching check");
        s.matched_modes = matched;
        s.partition = macronode_partition(s.graph);
    });

    clock.run("entangle", [&] {
        BalancedSplitter splitter = make_splitter(config);
        s.interferometer = build_block_interferometer(splitter, s.graph);
        s.z0 = initial_graph(s.graph, config.alpha);
        s.z = apply_interferometer(s.z0, s.interferometer);
        s.zc = cluster_graph(s.graph, s.interferometer, config.alpha);
        s.rgrt = entangled_adjacency(s.graph, s.interferometer);
    });

    clock.run("lattice", [&] {
        s.mg = coarse_grain(s.rgrt, s.partition, kCoarseRelThreshold);
        MacronodeGraph hgraph_level =
            coarse_grain(adjacency_matrix(s.graph), s.partition, kCoarseRelThreshold);
        s.adjacency_invariant = same_edge_structure(s.mg, hgraph_level);

        const auto offsets = lattice_offsets(config);
        const int copies = config.copies();
        s.copy_components = count_copies(s.mg);
        if (copies == 1) {
            s.lattice = verify_hypercubic(s.mg, offsets, config.window);
            s.lattice_pass = s.lattice.pass;
        } else {
            CopySplit split = split_copies(s.mg, copies);
            s.cross_copy_edges = split.cross_copy_edges;
            s.lattice_pass = split.cross_copy_edges == 0;
            for (const auto& copy : split.copy_graphs) {
                s.copy_reports.push_back(verify_hypercubic(copy, offsets, config.window));
                s.lattice_pass = s.lattice_pass && s.copy_reports.back().pass;
            }
        }
    });

    clock.run("nullifiers", [&] {
        const auto matched = matched_mask(s.graph);
        s.two_tone_checked = config.alpha > 0.0;
        s.two_tone_pass = true;
        for (double theta : config.thetas) {
            s.nullifiers.push_back(nullifier_rows(theta, s.interferometer, s.graph, config.alpha));
            s.analytic_covs.push_back(nullifier_cov_analytic(theta, s.graph, config.alpha));
            if (!s.two_tone_checked) continue;
            const auto support = two_tone_support(s.nullifiers.back(), s.graph);
            for (std::size_t i = 0; i < support.size(); ++i) {
                const std::size_t want = matched[i] ? 2 : 1;
                if (support[i].size() != want) s.two_tone_pass = false;
            }
        }
    });

    if (s.graph.num_modes() <= kDenseCheckLimit) {
        clock.run("dense_checks", [&] {
            s.dense_checked = true;
            s.cov = covariance_from_graph(s.z);

            double purity_dev = 0.0;
            for (const GraphState* state : {&s.z0, &s.z, &s.zc}) {
                const Eigen::VectorXd nu = symplectic_eigenvalues(covariance_from_graph(*state));
                purity_dev = std::max(purity_dev, (nu.array() - 0.5).abs().maxCoeff());
            }
            s.purity_deviation = purity_dev;
            s.purity_pass = purity_dev < kPurityTol;

            s.nullifier_pass = true;
            for (std::size_t i = 0; i < s.nullifiers.size(); ++i) {
                s.numeric_covs.push_back(nullifier_cov_numeric(*s.cov, s.nullifiers[i]));
                const double dev =
                    matched_max_deviation(s.numeric_covs.back(), s.analytic_covs[i], s.graph);
                s.nullifier_deviations.push_back(dev);
                if (!(dev < kNullifierTol)) s.nullifier_pass = false;
            }
        });
    }

    if (config.samples > 0) {
        clock.run("monte_carlo", [&] {
            if (!s.cov) throw ValidationError("sampling requires the dense covariance");
            s.sampled = true;
            const Eigen::MatrixXd samples =
                sample_quadratures(s.cov->sigma, config.samples, config.seed, config.workers);
            const auto matched = matched_mask(s.graph);
            const auto scalars = squeezing_scalars(config.alpha);
            const double se_factor = std::sqrt(2.0 / static_cast<double>(config.samples - 1));

            s.mc_pass = true;
            for (const auto& rows : s.nullifiers) {
                const Eigen::MatrixXd values = samples * Eigen::MatrixXd(rows.rows).transpose();
                const Eigen::VectorXd est = column_variances(values);
                double max_abs_z = 0.0;
                for (Eigen::Index i = 0; i < est.size(); ++i) {
                    const double ref =
                        matched[static_cast<std::size_t>(i)] ? 0.5 * scalars.epsilon : 0.5;
                    max_abs_z = std::max(max_abs_z, std::abs(est(i) - ref) / (ref * se_factor));
                }
                s.mc_max_abs_z.push_back(max_abs_z);
                if (!(max_abs_z < kZScoreMax)) s.mc_pass = false;
            }
        });
    }

    return s;
}

Json build_report(const RunState& s) {
    const auto scalars = squeezing_scalars(s.config.alpha);

    Json report;
    report["config"] = config_to_json(s.config);
    report["scalars"] = Json{{"alpha", s.config.alpha},
                             {"c", scalars.c},
                             {"s", scalars.s},
                             {"epsilon", scalars.epsilon},
                             {"t", scalars.t}};
    report["modes"] = Json{{"qumodes", s.graph.num_modes()},
                           {"macronodes", s.partition.size()},
                           {"matched", s.matched_modes},
                           {"boundary", s.graph.unmatched.size()}};
    report["slot_ordering"] =
        "slot = 2*(opo-1) + (0 for Z, 1 for Y); modes ordered by (opo, pol Z<Y, n)";

    if (s.config.copies() == 1) {
        report["lattice"] = lattice_report_json(s.lattice);
    } else {
        Json copies;
        copies["copies"] = s.config.copies();
        copies["cross_copy_edges"] = s.cross_copy_edges;
        copies["copy_components"] = s.copy_components;
        Json per_copy = Json::array();
        for (const auto& r : s.copy_reports) per_copy.push_back(lattice_report_json(r));
        copies["per_copy"] = std::move(per_copy);
        copies["pass"] = s.lattice_pass;
        report["lattice"] = std::move(copies);
    }
    report["adjacency_invariant"] = s.adjacency_invariant;

    Json nullifiers;
    nullifiers["checked"] = s.dense_checked;
    nullifiers["tolerance"] = kNullifierTol;
    Json per_theta = Json::array();
    for (std::size_t i = 0; i < s.config.thetas.size(); ++i) {
        Json row;
        row["theta"] = s.config.thetas[i];
        row["analytic_diagonal"] = 0.5 * scalars.epsilon;
        if (s.dense_checked) row["max_matched_deviation"] = s.nullifier_deviations[i];
        per_theta.push_back(std::move(row));
    }
    nullifiers["per_theta"] = std::move(per_theta);
    if (s.dense_checked) nullifiers["pass"] = s.nullifier_pass;
    report["nullifiers"] = std::move(nullifiers);

    report["two_tone"] = s.two_tone_checked
                             ? Json{{"checked", true}, {"pass", s.two_tone_pass}}
                             : Json{{"checked", false}};

    Json purity;
    purity["checked"] = s.dense_checked;
    purity["tolerance"] = kPurityTol;
    if (s.dense_checked) {
        purity["max_deviation"] = s.purity_deviation;
        purity["pass"] = s.purity_pass;
    }
    report["purity"] = std::move(purity);

    Json mc;
    mc["checked"] = s.sampled;
    if (s.sampled) {
        mc["samples"] = s.config.samples;
        mc["z_max"] = kZScoreMax;
        Json rows = Json::array();
        for (std::size_t i = 0; i < s.mc_max_abs_z.size(); ++i)
            rows.push_back(Json{{"theta", s.config.thetas[i]}, {"max_abs_z", s.mc_max_abs_z[i]}});
        mc["per_theta"] = std::move(rows);
        mc["pass"] = s.mc_pass;
    }
    report["monte_carlo"] = std::move(mc);

    Json boundary = Json::array();
    for (int i : s.graph.unmatched) {
        const QumodeId& id = s.graph.modes[static_cast<std::size_t>(i)];
        boundary.push_back(
            Json{{"index", i}, {"opo", id.opo}, {"pol", to_string(id.pol)}, {"n", id.n}});
    }
    report["boundary_modes"] = std::move(boundary);

    Json verdicts;
    verdicts["lattice"] = s.lattice_pass;
    verdicts["adjacency_invariant"] = s.adjacency_invariant;
    verdicts["two_tone"] = s.two_tone_checked ? Json(s.two_tone_pass) : Json("skipped");
    verdicts["nullifiers"] = s.dense_checked ? Json(s.nullifier_pass) : Json("skipped");
    verdicts["purity"] = s.dense_checked ? Json(s.purity_pass) : Json("skipped");
    verdicts["monte_carlo"] = s.sampled ? Json(s.mc_pass) : Json("skipped");
    verdicts["pass"] = s.pass();
    report["verdicts"] = std::move(verdicts);
    return report;
}

std::vector<std::filesystem::path> export_artifacts(const RunState& s,
                                                    const std::vector<std::string>& selectors,
                                                    const std::filesystem::path& out_dir) {
    std::vector<StagedFile> staged;
    for (const std::string& sel : selectors) {
        if (sel == "report") {
            staged.push_back({"report.json", build_report(s).dump(2) + "\n"});
        } else if (sel == "hgraph") {
            staged.push_back({"hgraph_edges.json", hgraph_edges_json(s.graph).dump(2) + "\n"});
        } else if (sel == "matrices") {
            staged.push_back({"mode_map.json", mode_map_json(s.graph).dump(2) + "\n"});
            staged.push_back({"g.mtx", matrix_market_text(adjacency_matrix(s.graph))});
            staged.push_back({"r.mtx", matrix_market_text(s.interferometer.matrix)});
            staged.push_back({"z_re.mtx", matrix_market_text(sparse_part(s.z.z, false))});
            staged.push_back({"z_im.mtx", matrix_market_text(sparse_part(s.z.z, true))});
            for (std::size_t i = 0; i < s.analytic_covs.size(); ++i)
                staged.push_back({"nullifier_analytic_" + std::to_string(i) + ".mtx",
                                  matrix_market_text(s.analytic_covs[i])});
            for (std::size_t i = 0; i < s.numeric_covs.size(); ++i)
                staged.push_back({"nullifier_numeric_" + std::to_string(i) + ".mtx",
                                  matrix_market_text(s.numeric_covs[i])});
        } else if (sel == "dot") {
            staged.push_back({"macronodes.dot", dot_text(s.mg, s.config.copies())});
        } else {
            throw ValidationError("unknown export selector '" + sel + "'");
        }
    }
    return write_staged(staged, out_dir);
}

RunResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir) {
    RunResult result;
    result.state = execute_stages(config);
    result.report = build_report(result.state);
    result.pass = result.state.pass();
    if (!out_dir.empty())
        result.files_written = export_artifacts(result.state, config.exports, out_dir);
    return result;
}

}  // namespace comblat
