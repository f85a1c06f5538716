#include "comblat/hgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace comblat {

namespace {

// Union-find over 0..n-1.
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int HGraph::opo_count() const {
    std::set<int> opos;
    for (const auto& m : modes) opos.insert(m.opo);
    return static_cast<int>(opos.size());
}

int HGraph::index_of(const QumodeId& id) const {
    auto it = std::lower_bound(modes.begin(), modes.end(), id);
    if (it == modes.end() || !(*it == id)) return -1;
    return static_cast<int>(it - modes.begin());
}

HGraph build_hgraph(const std::vector<OpoSpec>& specs, const CombWindow& window) {
    if (specs.empty())
        throw ValidationError("at least one OPO spec is required");
    if (window.n_min > window.n_max)
        throw EmptyWindow("window [" + std::to_string(window.n_min) + ", " +
                          std::to_string(window.n_max) + "] is empty");

    const int opo_count = static_cast<int>(specs.size());
    const std::int64_t width = window.size();

    HGraph g;
    g.window = window;
    g.specs = specs;
    g.modes.reserve(static_cast<std::size_t>(opo_count) * 2 * width);

    // Canonical layout: index(opo, pol, n) = ((opo-1)*2 + pol)*width + (n - n_min).
    auto index_of = [&](int opo, Pol pol, std::int64_t n) {
        return static_cast<int>(((opo - 1) * 2 + static_cast<int>(pol)) * width +
                                (n - window.n_min));
    };
    for (int opo = 1; opo <= opo_count; ++opo)
        for (Pol pol : {Pol::Z, Pol::Y})
            for (std::int64_t n = window.n_min; n <= window.n_max; ++n)
                g.modes.push_back({opo, pol, n});

    for (int opo = 1; opo <= opo_count; ++opo) {
        const PumpIndices pumps = pump_indices(specs[static_cast<std::size_t>(opo - 1)]);
        for (Pol pol : {Pol::Z, Pol::Y}) {
            const std::int64_t p = (pol == Pol::Z) ? pumps.z : pumps.y;
            // One edge per odd macronode m with both endpoints in the window.
            for (std::int64_t n1 = window.n_min; n1 <= window.n_max; ++n1) {
                const std::int64_t m1 = macronode_of(n1);
                if (m1 % 2 == 0) continue;
                const std::int64_t n2 = frequency_of(m1 + p);
                if (!window.contains(n2)) continue;
                int a = index_of(opo, pol, n1);
                int b = index_of(opo, pol, n2);
                g.edges.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());

    std::vector<bool> matched(g.modes.size(), false);
    for (const auto& [a, b] : g.edges) matched[static_cast<std::size_t>(a)] = matched[static_cast<std::size_t>(b)] = true;
    for (int i = 0; i < g.num_modes(); ++i)
        if (!matched[static_cast<std::size_t>(i)]) g.unmatched.push_back(i);

    return g;
}

std::vector<bool> matched_mask(const HGraph& g) {
    std::vector<bool> matched(g.modes.size(), false);
    for (const auto& [a, b] : g.edges) {
        matched[static_cast<std::size_t>(a)] = true;
        matched[static_cast<std::size_t>(b)] = true;
    }
    return matched;
}

std::pair<int, bool> matching_projector_check(const HGraph& g) {
    const auto matched = matched_mask(g);
    const int matched_count = static_cast<int>(std::count(matched.begin(), matched.end(), true));

    SparseReal a = adjacency_matrix(g);
    SparseReal sq = (a * a).pruned();

    // G^2 must equal diag(matched indicator) exactly; entries are small
    // integers, so double comparison is exact.
    bool ok = true;
    std::vector<bool> diag_seen(g.modes.size(), false);
    for (int col = 0; col < sq.outerSize() && ok; ++col) {
        for (SparseReal::InnerIterator it(sq, col); it; ++it) {
            if (it.value() == 0.0) continue;
            if (it.row() != it.col() || it.value() != 1.0) {
                ok = false;
                break;
            }
            diag_seen[static_cast<std::size_t>(it.row())] = true;
        }
    }
    if (ok) {
        for (std::size_t i = 0; i < matched.size(); ++i) {
            if (diag_seen[i] != matched[i]) {
                ok = false;
                break;
            }
        }
    }
    return {matched_count, ok};
}

std::vector<std::vector<std::int64_t>> components(const HGraph& g, ComponentLevel level) {
    std::vector<std::vector<std::int64_t>> result;
    if (level == ComponentLevel::Qumode) {
        DisjointSet ds(g.num_modes());
        for (const auto& [a, b] : g.edges) ds.unite(a, b);
        std::map<int, std::vector<std::int64_t>> groups;
        for (int i = 0; i < g.num_modes(); ++i) groups[ds.find(i)].push_back(i);
        for (auto& [root, members] : groups) result.push_back(std::move(members));
    } else {
        // Vertices are the distinct macronode indices present among modes.
        std::vector<std::int64_t> nodes;
        for (const auto& mode : g.modes) nodes.push_back(macronode_of(mode.n));
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        auto node_index = [&](std::int64_t m) {
            return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), m) - nodes.begin());
        };
        DisjointSet ds(static_cast<int>(nodes.size()));
        for (const auto& [a, b] : g.edges) {
            const std::int64_t ma = macronode_of(g.modes[static_cast<std::size_t>(a)].n);
            const std::int64_t mb = macronode_of(g.modes[static_cast<std::size_t>(b)].n);
            ds.unite(node_index(ma), node_index(mb));
        }
        std::map<int, std::vector<std::int64_t>> groups;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            groups[ds.find(static_cast<int>(i))].push_back(nodes[i]);
        for (auto& [root, members] : groups) result.push_back(std::move(members));
    }
    for (auto& comp : result) std::sort(comp.begin(), comp.end());
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return result;
}

SparseReal adjacency_matrix(const HGraph& g) {
    const int n = g.num_modes();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.edges.size() * 2);
    for (const auto& [a, b] : g.edges) {
        triplets.emplace_back(a, b, 1.0);
        triplets.emplace_back(b, a, 1.0);
    }
    SparseReal m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

std::vector<Macronode> macronode_partition(const HGraph& g) {
    std::map<std::int64_t, std::vector<int>> groups;
    for (int i = 0; i < g.num_modes(); ++i)
        groups[macronode_of(g.modes[static_cast<std::size_t>(i)].n)].push_back(i);

    std::vector<Macronode> partition;
    partition.reserve(groups.size());
    for (auto& [m, members] : groups) {
        // Slot order: opo ascending, Z before Y. Canonical mode ordering is
        // (opo, pol, n), so sorting member indices directly gives slot order
        // within a fixed frequency.
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            const auto& ma = g.modes[static_cast<std::size_t>(a)];
            const auto& mb = g.modes[static_cast<std::size_t>(b)];
            if (ma.opo != mb.opo) return ma.opo < mb.opo;
            return static_cast<int>(ma.pol) < static_cast<int>(mb.pol);
        });
        partition.push_back({m, frequency_of(m), std::move(members)});
    }
    return partition;
}

bool contiguous_macronode_range(const HGraph& g) {
    std::set<std::int64_t> nodes;
    for (const auto& mode : g.modes) nodes.insert(macronode_of(mode.n));
    if (nodes.empty()) return true;
    return *nodes.rbegin() - *nodes.begin() + 1 == static_cast<std::int64_t>(nodes.size());
}

}  // namespace comblat
