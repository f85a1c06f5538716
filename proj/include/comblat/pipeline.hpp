#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "comblat/config.hpp"
#include "comblat/exports.hpp"
#include "comblat/gaussian.hpp"
#include "comblat/lattice.hpp"
#include "comblat/limits.hpp"
#include "comblat/sampling.hpp"

namespace comblat {

/// Everything produced by the compute stages, dense pieces present only
/// when the mode count allows them (see kDenseCheckLimit).
struct RunState {
    PipelineConfig config;

    HGraph graph;
    std::vector<Macronode> partition;
    int matched_modes = 0;

    BlockInterferometer interferometer;
    GraphState z0;   // OPO output graph
    GraphState z;    // after the interferometer
    GraphState zc;   // cluster form i eps I + t RGR^T
    SparseReal rgrt;

    MacronodeGraph mg;
    LatticeReport lattice;                    // copies = 1: whole graph
    std::vector<LatticeReport> copy_reports;  // copies > 1: one per copy
    std::int64_t cross_copy_edges = 0;
    std::int64_t copy_components = 0;
    bool lattice_pass = false;
    bool adjacency_invariant = false;  // coarse(G) == coarse(RGR^T)

    std::vector<NullifierSet> nullifiers;    // one per theta
    std::vector<SparseReal> analytic_covs;   // one per theta
    bool two_tone_checked = false;
    bool two_tone_pass = false;

    bool dense_checked = false;
    std::optional<QuadratureCovariance> cov;        // of z
    std::vector<Eigen::MatrixXd> numeric_covs;      // one per theta
    std::vector<double> nullifier_deviations;       // one per theta
    double purity_deviation = 0.0;
    bool nullifier_pass = false;
    bool purity_pass = false;

    bool sampled = false;
    std::vector<double> mc_max_abs_z;  // one per theta
    bool mc_pass = false;

    std::vector<std::pair<std::string, double>> timings;  // (stage, seconds)

    bool pass() const;
};

/// Run every compute stage (no file I/O).
RunState execute_stages(const PipelineConfig& config);

/// Deterministic verification report (no timings, byte-stable).
Json build_report(const RunState& s);

/// Write the selected artifacts; returns the files written.
std::vector<std::filesystem::path> export_artifacts(const RunState& s,
                                                    const std::vector<std::string>& selectors,
                                                    const std::filesystem::path& out_dir);

struct RunResult {
    RunState state;
    Json report;
    bool pass = false;
    std::vector<std::filesystem::path> files_written;
};

/// execute_stages + build_report + export_artifacts (skipped when out_dir
/// is empty).
RunResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir = {});

}  // namespace comblat
