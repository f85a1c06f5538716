#include "comblat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "comblat/comb.hpp"

namespace comblat {

namespace {

struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

void check_offsets(const std::vector<std::int64_t>& offsets) {
    if (offsets.empty()) throw ValidationError("lattice offsets must not be empty");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] <= 0)
            throw ValidationError("lattice offsets must be positive, got " +
                                  std::to_string(offsets[i]));
        if (i > 0 && offsets[i] <= offsets[i - 1])
            throw ValidationError("lattice offsets must be strictly increasing");
    }
}

}  // namespace

int MacronodeGraph::find_node(std::int64_t m) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), m,
                               [](const Macronode& node, std::int64_t value) { return node.m < value; });
    if (it == nodes.end() || it->m != m) return -1;
    return static_cast<int>(it - nodes.begin());
}

MacronodeGraph coarse_grain(const SparseReal& matrix, const std::vector<Macronode>& partition,
                            double rel_threshold) {
    if (matrix.rows() != matrix.cols()) throw DimensionMismatch("matrix to coarse-grain must be square");
    if (!(rel_threshold > 0.0) || rel_threshold >= 1.0)
        throw ValidationError("rel_threshold must lie in (0, 1)");

    MacronodeGraph mg;
    mg.nodes = partition;
    std::sort(mg.nodes.begin(), mg.nodes.end(),
              [](const Macronode& a, const Macronode& b) { return a.m < b.m; });

    std::vector<int> slot_of(static_cast<std::size_t>(matrix.rows()), -1);
    std::int64_t covered = 0;
    for (std::size_t s = 0; s < mg.nodes.size(); ++s) {
        for (int q : mg.nodes[s].members) {
            if (q < 0 || q >= matrix.rows() || slot_of[static_cast<std::size_t>(q)] != -1)
                throw BadPartition("partition must cover each qumode index exactly once");
            slot_of[static_cast<std::size_t>(q)] = static_cast<int>(s);
            ++covered;
        }
    }
    if (covered != matrix.rows())
        throw BadPartition("partition covers " + std::to_string(covered) + " of " +
                           std::to_string(matrix.rows()) + " qumodes");

    double max_off_block = 0.0;
    for (int col = 0; col < matrix.outerSize(); ++col)
        for (SparseReal::InnerIterator it(matrix, col); it; ++it)
            if (slot_of[static_cast<std::size_t>(it.row())] !=
                slot_of[static_cast<std::size_t>(it.col())])
                max_off_block = std::max(max_off_block, std::abs(it.value()));
    const double cutoff = rel_threshold * max_off_block;

    std::map<std::pair<int, int>, double> weights;
    for (int col = 0; col < matrix.outerSize(); ++col) {
        for (SparseReal::InnerIterator it(matrix, col); it; ++it) {
            int a = slot_of[static_cast<std::size_t>(it.row())];
            int b = slot_of[static_cast<std::size_t>(it.col())];
            if (a == b) continue;
            const double v = std::abs(it.value());
            if (v <= cutoff) continue;
            if (a > b) std::swap(a, b);
            auto [pos, inserted] = weights.try_emplace({a, b}, v);
            if (!inserted) pos->second = std::max(pos->second, v);
        }
    }
    mg.edges.reserve(weights.size());
    for (const auto& [key, w] : weights) mg.edges.push_back({key.first, key.second, w});
    return mg;
}

LatticeReport verify_hypercubic(const MacronodeGraph& mg, const std::vector<std::int64_t>& offsets,
                                const CombWindow& window) {
    check_offsets(offsets);

    LatticeReport report;
    report.dimensionality = static_cast<int>(offsets.size());
    report.offsets = offsets;

    std::set<std::pair<std::int64_t, std::int64_t>> expected;
    for (const auto& node : mg.nodes) {
        int neighbors = 0;
        for (auto d : offsets) {
            if (mg.find_node(node.m + d) >= 0) {
                expected.emplace(node.m, node.m + d);
                ++neighbors;
            }
            if (mg.find_node(node.m - d) >= 0) ++neighbors;
        }
        if (neighbors == 2 * report.dimensionality)
            report.interior_nodes.push_back(node.m);
        else
            report.boundary_nodes.push_back(node.m);
    }
    report.expected_edges = static_cast<std::int64_t>(expected.size());
    report.observed_edges = static_cast<std::int64_t>(mg.edges.size());

    std::set<std::pair<std::int64_t, std::int64_t>> observed;
    for (const auto& e : mg.edges) {
        std::int64_t ma = mg.nodes[static_cast<std::size_t>(e.a)].m;
        std::int64_t mb = mg.nodes[static_cast<std::size_t>(e.b)].m;
        if (ma > mb) std::swap(ma, mb);
        observed.emplace(ma, mb);
        if (report.min_edge_weight == 0.0 || e.weight < report.min_edge_weight)
            report.min_edge_weight = e.weight;
        report.max_edge_weight = std::max(report.max_edge_weight, e.weight);
    }

    auto describe = [](const std::pair<std::int64_t, std::int64_t>& p) {
        return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
    };
    constexpr std::size_t kMaxListed = 5;
    std::size_t listed = 0;
    for (const auto& e : expected) {
        if (observed.count(e)) continue;
        ++report.missing_edges;
        if (listed++ < kMaxListed)
            report.diagnostics.push_back("missing macronode edge " + describe(e));
    }
    listed = 0;
    for (const auto& e : observed) {
        if (expected.count(e)) continue;
        ++report.extra_edges;
        if (listed++ < kMaxListed)
            report.diagnostics.push_back("unexpected macronode edge " + describe(e));
    }

    if (!mg.nodes.empty()) {
        const std::int64_t span = mg.nodes.back().m - mg.nodes.front().m + 1;
        report.contiguous = span == static_cast<std::int64_t>(mg.nodes.size());
        if (!report.contiguous)
            report.diagnostics.push_back(
                "ragged macronode set: " + std::to_string(mg.nodes.size()) + " macronodes span [" +
                std::to_string(mg.nodes.front().m) + ", " + std::to_string(mg.nodes.back().m) +
                "] (window n in [" + std::to_string(window.n_min) + ", " +
                std::to_string(window.n_max) + "])");
    }

    report.copy_components = count_copies(mg);
    report.pass = report.missing_edges == 0 && report.extra_edges == 0;
    return report;
}

std::int64_t count_copies(const MacronodeGraph& mg) {
    if (mg.nodes.empty()) return 0;
    DisjointSet ds(mg.nodes.size());
    for (const auto& e : mg.edges) ds.unite(e.a, e.b);
    std::set<int> roots;
    for (int i = 0; i < static_cast<int>(mg.nodes.size()); ++i) roots.insert(ds.find(i));
    return static_cast<std::int64_t>(roots.size());
}

CopySplit split_copies(const MacronodeGraph& mg, int copies) {
    if (copies < 1) throw ValidationError("copy count must be positive");

    CopySplit split;
    split.copies = copies;
    split.copy_graphs.resize(static_cast<std::size_t>(copies));

    std::vector<int> copy_of(mg.nodes.size(), 0);
    std::vector<std::int64_t> compound_of(mg.nodes.size(), 0);
    std::vector<std::vector<std::size_t>> per_copy(static_cast<std::size_t>(copies));
    for (std::size_t i = 0; i < mg.nodes.size(); ++i) {
        const std::int64_t freq = frequency_of(mg.nodes[i].m);
        const CompoundIndex ci = frequency_to_compound(freq, copies);
        copy_of[i] = ci.k;
        compound_of[i] = ci.m;
        per_copy[static_cast<std::size_t>(ci.k)].push_back(i);
    }

    std::vector<int> local_index(mg.nodes.size(), -1);
    for (int k = 0; k < copies; ++k) {
        auto& members = per_copy[static_cast<std::size_t>(k)];
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return compound_of[a] < compound_of[b]; });
        auto& graph = split.copy_graphs[static_cast<std::size_t>(k)];
        graph.nodes.reserve(members.size());
        for (std::size_t i : members) {
            Macronode relabeled = mg.nodes[i];
            relabeled.n = frequency_of(mg.nodes[i].m);
            relabeled.m = compound_of[i];  // compound index becomes the lattice coordinate
            local_index[i] = static_cast<int>(graph.nodes.size());
            graph.nodes.push_back(std::move(relabeled));
        }
    }

    for (const auto& e : mg.edges) {
        const std::size_t ia = static_cast<std::size_t>(e.a);
        const std::size_t ib = static_cast<std::size_t>(e.b);
        if (copy_of[ia] != copy_of[ib]) {
            ++split.cross_copy_edges;
            continue;
        }
        auto& graph = split.copy_graphs[static_cast<std::size_t>(copy_of[ia])];
        int a = local_index[ia];
        int b = local_index[ib];
        if (a > b) std::swap(a, b);
        graph.edges.push_back({a, b, e.weight});
    }
    for (auto& graph : split.copy_graphs)
        std::sort(graph.edges.begin(), graph.edges.end(),
                  [](const MacronodeGraph::Edge& x, const MacronodeGraph::Edge& y) {
                      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                  });
    return split;
}

}  // namespace comblat
