#include "comblat/exports.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace comblat {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    double value;
};

std::string coordinate_text(Eigen::Index rows, Eigen::Index cols, bool symmetric,
                            const std::vector<Entry>& entries) {
    std::string out;
    out += "%%MatrixMarket matrix coordinate real ";
    out += symmetric ? "symmetric" : "general";
    out += "\n";
    out += std::to_string(rows) + " " + std::to_string(cols) + " " +
           std::to_string(entries.size()) + "\n";
    for (const auto& e : entries) {
        out += std::to_string(e.row + 1);
        out += " ";
        out += std::to_string(e.col + 1);
        out += " ";
        out += format_value(e.value);
        out += "\n";
    }
    return out;
}

}  // namespace

std::string matrix_market_text(const SparseReal& m) {
    SparseReal diff = m - SparseReal(m.transpose());
    const bool symmetric = m.rows() == m.cols() && diff.squaredNorm() == 0.0;

    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(m.nonZeros()));
    for (int col = 0; col < m.outerSize(); ++col)
        for (SparseReal::InnerIterator it(m, col); it; ++it) {
            if (it.value() == 0.0) continue;
            if (symmetric && it.row() < it.col()) continue;
            entries.push_back({it.row(), it.col(), it.value()});
        }
    return coordinate_text(m.rows(), m.cols(), symmetric, entries);
}

std::string matrix_market_text(const Eigen::MatrixXd& m) {
    const bool symmetric =
        m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0;

    std::vector<Entry> entries;
    for (Eigen::Index col = 0; col < m.cols(); ++col)
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            if (m(row, col) == 0.0) continue;
            if (symmetric && row < col) continue;
            entries.push_back({row, col, m(row, col)});
        }
    return coordinate_text(m.rows(), m.cols(), symmetric, entries);
}

std::string dot_text(const MacronodeGraph& mg, int copies) {
    auto node_id = [](std::int64_t m) { return "\"m" + std::to_string(m) + "\""; };

    std::string out = "graph macronodes {\n  node [shape=circle];\n";
    for (const auto& node : mg.nodes) {
        const int k = frequency_to_compound(frequency_of(node.m), copies).k;
        out += "  " + node_id(node.m) + " [label=\"m=" + std::to_string(node.m) +
               " k=" + std::to_string(k) + "\"];\n";
    }
    char buf[32];
    for (const auto& e : mg.edges) {
        std::snprintf(buf, sizeof(buf), "%.9g", e.weight);
        out += "  " + node_id(mg.nodes[static_cast<std::size_t>(e.a)].m) + " -- " +
               node_id(mg.nodes[static_cast<std::size_t>(e.b)].m) + " [label=\"" + buf + "\"];\n";
    }
    out += "}\n";
    return out;
}

Json hgraph_edges_json(const HGraph& g) {
    Json edges = Json::array();
    for (const auto& [i, j] : g.edges) {
        const QumodeId& a = g.modes[static_cast<std::size_t>(i)];
        const QumodeId& b = g.modes[static_cast<std::size_t>(j)];
        edges.push_back(Json{{"opo", a.opo},
                             {"pol", to_string(a.pol)},
                             {"m1", macronode_of(a.n)},
                             {"m2", macronode_of(b.n)},
                             {"n1", a.n},
                             {"n2", b.n}});
    }
    return edges;
}

Json mode_map_json(const HGraph& g) {
    Json modes = Json::array();
    for (std::size_t i = 0; i < g.modes.size(); ++i) {
        const QumodeId& id = g.modes[i];
        modes.push_back(Json{{"index", i},
                             {"opo", id.opo},
                             {"pol", to_string(id.pol)},
                             {"n", id.n},
                             {"m", macronode_of(id.n)},
                             {"slot", 2 * (id.opo - 1) + static_cast<int>(id.pol)}});
    }
    return modes;
}

std::vector<std::filesystem::path> write_staged(const std::vector<StagedFile>& files,
                                                const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<fs::path> temps;
    auto cleanup = [&temps]() {
        for (const auto& t : temps) {
            std::error_code ignored;
            fs::remove(t, ignored);
        }
    };

    for (const auto& f : files) {
        fs::path tmp = out_dir / (f.name.string() + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << f.content) || !(out.flush())) {
            cleanup();
            throw IoError("cannot write " + tmp.string());
        }
        out.close();
        temps.push_back(tmp);
    }

    std::vector<fs::path> finals;
    finals.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        fs::path final_path = out_dir / files[i].name;
        fs::rename(temps[i], final_path, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot finalize " + final_path.string() + ": " + ec.message());
        }
        finals.push_back(final_path);
    }
    return finals;
}

}  // namespace comblat
