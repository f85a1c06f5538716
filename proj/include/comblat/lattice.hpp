#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comblat/hgraph.hpp"

namespace comblat {

// Weighted graph on macronodes obtained by collapsing a qumode-level matrix.
// Never carries self-edges: entries inside one macronode block are ignored
// by construction.
struct MacronodeGraph {
    struct Edge {
        int a = 0;  // index into nodes, a < b
        int b = 0;
        double weight = 0.0;  // max absolute qumode-level coupling
    };

    std::vector<Macronode> nodes;  // sorted by macronode index
    std::vector<Edge> edges;       // sorted by (a, b), unique

    int find_node(std::int64_t m) const;  // -1 when absent
};

// Collapse |matrix| onto the partition: an edge between two distinct
// macronodes is recorded when the largest entry between their blocks exceeds
// rel_threshold times the largest off-block entry overall.
MacronodeGraph coarse_grain(const SparseReal& matrix, const std::vector<Macronode>& partition,
                            double rel_threshold = 1e-6);

struct LatticeReport {
    int dimensionality = 0;
    std::vector<std::int64_t> offsets;
    std::vector<std::int64_t> interior_nodes;  // all 2D neighbors present
    std::vector<std::int64_t> boundary_nodes;  // at least one neighbor cut off
    std::int64_t copy_components = 0;
    std::int64_t expected_edges = 0;
    std::int64_t observed_edges = 0;
    std::int64_t missing_edges = 0;
    std::int64_t extra_edges = 0;
    double min_edge_weight = 0.0;
    double max_edge_weight = 0.0;
    bool contiguous = false;  // macronode ids form one integer interval
    bool pass = false;
    std::vector<std::string> diagnostics;
};

// Check that the graph is exactly the lattice generated by the offsets on
// the nodes that are present: an edge (m, m + d) must exist for every offset
// d whenever both endpoints exist, and no other edge may exist.  A ragged
// (non-contiguous) macronode set is flagged in diagnostics but is not a
// failure by itself.
LatticeReport verify_hypercubic(const MacronodeGraph& mg, const std::vector<std::int64_t>& offsets,
                                const CombWindow& window);

// Number of connected components; M independent copies show up as M
// components per underlying lattice component.
std::int64_t count_copies(const MacronodeGraph& mg);

// Result of separating a compound-frequency graph into its interleaved
// copies.  Nodes of each copy graph carry the compound macronode index in
// Macronode::m while keeping the physical frequency in Macronode::n.
struct CopySplit {
    int copies = 0;
    std::vector<MacronodeGraph> copy_graphs;
    std::int64_t cross_copy_edges = 0;  // must be 0 for independent copies
};

CopySplit split_copies(const MacronodeGraph& mg, int copies);

}  // namespace comblat
