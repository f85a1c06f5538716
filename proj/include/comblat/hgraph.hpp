#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "comblat/comb.hpp"

namespace comblat {

using SparseReal = Eigen::SparseMatrix<double>;

/// Weight-1 perfect matching over comb qumodes. Modes are stored in the
/// canonical order (opo ascending, Z before Y, n ascending); edges are
/// index pairs (i, j) with i < j; modes whose partner fell outside the
/// window are kept as vacuum modes and listed in `unmatched`.
struct HGraph {
    std::vector<QumodeId> modes;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> unmatched;
    CombWindow window{0, 0};
    std::vector<OpoSpec> specs;

    int num_modes() const { return static_cast<int>(modes.size()); }

    /// Number of OPOs represented (distinct opo labels among modes).
    int opo_count() const;

    /// Canonical index of a mode id, or -1 if absent.
    int index_of(const QumodeId& id) const;
};

/// One frequency-degenerate macronode: its index m, frequency n, and the
/// 2D member modes ordered by slot = 2*(opo-1) + (0 for Z, 1 for Y).
struct Macronode {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::vector<int> members;
};

enum class ComponentLevel { Qumode, Macronode };

/// Build the H-graph for the given OPOs over a shared window: one edge per
/// polarization and per odd macronode index m, joining macronodes m and
/// m + p, whenever both endpoint frequencies lie inside the window.
HGraph build_hgraph(const std::vector<OpoSpec>& specs, const CombWindow& window);

/// Check G^2 = P with P the diagonal projector onto matched modes.
/// Returns (matched mode count, exact equality).
std::pair<int, bool> matching_projector_check(const HGraph& g);

/// Connected components. At qumode level the entries are mode indices;
/// at macronode level they are macronode indices m. Components are sorted
/// internally and ordered by their smallest entry.
std::vector<std::vector<std::int64_t>> components(const HGraph& g, ComponentLevel level);

/// N x N symmetric 0/1 adjacency matrix with zero diagonal.
SparseReal adjacency_matrix(const HGraph& g);

/// Group modes into frequency-degenerate macronodes, ordered by m.
std::vector<Macronode> macronode_partition(const HGraph& g);

/// True for every mode index that appears in some edge.
std::vector<bool> matched_mask(const HGraph& g);

/// Whether the macronode index set is a contiguous integer range
/// (asymmetric frequency windows can produce ragged sets).
bool contiguous_macronode_range(const HGraph& g);

}  // namespace comblat
