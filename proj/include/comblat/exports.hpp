#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "comblat/config.hpp"
#include "comblat/gaussian.hpp"
#include "comblat/lattice.hpp"

namespace comblat {

/// Matrix Market coordinate text, 1-based indices, %.17g values.  Exactly
/// symmetric matrices are emitted as kind "symmetric" (lower triangle),
/// everything else as "general".
std::string matrix_market_text(const SparseReal& m);
std::string matrix_market_text(const Eigen::MatrixXd& m);

/// DOT rendering of a macronode graph; node labels carry the macronode
/// index and the copy label under `copies`-fold compound indexing.
std::string dot_text(const MacronodeGraph& mg, int copies);

/// H-graph edge list as JSON records {opo, pol, m1, m2, n1, n2}.
Json hgraph_edges_json(const HGraph& g);

/// Canonical mode map sidecar: one record per qumode index.
Json mode_map_json(const HGraph& g);

/// One file staged for an atomic multi-file export.
struct StagedFile {
    std::filesystem::path name;  // relative to the output directory
    std::string content;
};

/// Write every staged file under out_dir, all-or-nothing: contents go to
/// temporaries first and are renamed only after every write succeeded.
/// Returns the final paths.
std::vector<std::filesystem::path> write_staged(const std::vector<StagedFile>& files,
                                                const std::filesystem::path& out_dir);

}  // namespace comblat
