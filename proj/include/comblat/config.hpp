#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "comblat/comb.hpp"
#include "comblat/interferometer.hpp"

namespace comblat {

using Json = nlohmann::ordered_json;

/// How the balanced splitter is obtained.
struct SplitterSpec {
    enum class Kind { Sylvester, Signs } kind = Kind::Sylvester;
    // Sign pattern (+1/-1 entries) of a user matrix; scaled by order^{-1/2}
    // and validated on use.  Empty for Sylvester.
    std::vector<std::vector<int>> signs;
};

struct PipelineConfig {
    CombWindow window{0, 0};
    std::vector<OpoSpec> opos;
    double alpha = 0.5;
    std::vector<double> thetas;  // defaults to {0, pi/4, pi/2}
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    int workers = 1;
    std::vector<std::string> exports;  // subset of {report, hgraph, matrices, dot}
    SplitterSpec splitter;

    int dimensions() const { return static_cast<int>(opos.size()); }
    int copies() const { return opos.empty() ? 1 : opos.front().copies; }
};

/// Parse and fully validate a JSON configuration document.  Defaults:
/// alpha = 0.5, thetas = [0, pi/4, pi/2], samples = 0, seed = 0, workers = 1,
/// exports = [report], splitter = sylvester.  Splitter files referenced by
/// the document are resolved against base_dir and loaded eagerly so the
/// parsed config is self-contained.
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

PipelineConfig parse_config_file(const std::filesystem::path& path);

/// Canonical JSON echo: parse_config(config_to_json(c).dump(), ...) yields
/// c again, and the echo of that round trip is byte-identical.
Json config_to_json(const PipelineConfig& c);

/// Instantiate the configured splitter for 2D-member macronodes.
BalancedSplitter make_splitter(const PipelineConfig& c);

/// Load a whitespace-separated numeric matrix; rows of +-1 signs are scaled
/// by order^{-1/2}, anything else is taken as already scaled.
Eigen::MatrixXd load_splitter_matrix(const std::filesystem::path& path);

}  // namespace comblat
