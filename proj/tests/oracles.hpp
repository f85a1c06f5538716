// Independent reference implementations used only by the tests.  These are
// deliberately written from the definitions, not by calling the library, so
// that a bug in the production code cannot hide behind a shared helper.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cstdint>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace oracles {

// (opo, pol, n1, n2) with pol 0 = Z, 1 = Y and n1 < n2.
using EdgeKey = std::tuple<int, int, std::int64_t, std::int64_t>;

struct OpoParams {
    std::int64_t delta_m = 1;
    std::int64_t copies = 1;
};

// Pump index pair computed straight from the two published formulas.
inline std::pair<std::int64_t, std::int64_t> pump_pair(std::int64_t dm, std::int64_t m) {
    if (m == 1) return {dm, -dm};
    return {-m * dm + (m - 1), m * dm + (m - 1)};  // (y, z)
}

// Brute-force two-mode-squeezing edge enumeration: frequencies n1 + n2 = p
// within the window, one pump per polarization per OPO.
inline std::set<EdgeKey> hgraph_edges(const std::vector<OpoParams>& opos,
                                      std::int64_t n_min, std::int64_t n_max) {
    std::set<EdgeKey> out;
    for (std::size_t o = 0; o < opos.size(); ++o) {
        auto [y, z] = pump_pair(opos[o].delta_m, opos[o].copies);
        const std::int64_t pump_of_pol[2] = {z, y};
        for (int pol = 0; pol < 2; ++pol) {
            for (std::int64_t n1 = n_min; n1 <= n_max; ++n1) {
                const std::int64_t n2 = pump_of_pol[pol] - n1;
                if (n2 > n1 && n2 <= n_max)
                    out.emplace(static_cast<int>(o) + 1, pol, n1, n2);
            }
        }
    }
    return out;
}

// Sylvester-Hadamard matrix as an iterated Kronecker product of the 2x2 seed.
inline Eigen::MatrixXd sylvester_kron(int order) {
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("kron oracle needs a power of two");
    Eigen::MatrixXd h2(2, 2);
    h2 << 1, 1, 1, -1;
    Eigen::MatrixXd h = h2;
    while (h.rows() < order) h = Eigen::kroneckerProduct(h2, h).eval();
    return h / std::sqrt(static_cast<double>(order));
}

// Order-12 Paley Hadamard sign matrix (entries +-1, not normalized).  Built
// from the quadratic residues of GF(11) and self-checked on construction.
inline Eigen::MatrixXd paley12_signs() {
    const int q = 11;
    std::set<int> qr;
    for (int x = 1; x < q; ++x) qr.insert((x * x) % q);
    auto chi = [&](int x) {
        x = ((x % q) + q) % q;
        if (x == 0) return 0;
        return qr.count(x) ? 1 : -1;
    };
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(q + 1, q + 1);
    for (int j = 1; j <= q; ++j) {
        h(0, j) += 1;
        h(j, 0) += -1;
    }
    for (int i = 1; i <= q; ++i)
        for (int j = 1; j <= q; ++j) h(i, j) += chi(i - j);
    if (((h * h.transpose()) - 12.0 * Eigen::MatrixXd::Identity(12, 12)).norm() > 1e-12)
        throw std::logic_error("paley12 oracle failed its own HH^T check");
    return h;
}

}  // namespace oracles
