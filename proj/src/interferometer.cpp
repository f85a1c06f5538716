#include "comblat/interferometer.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace comblat {

namespace {

constexpr double kOrthogonalityTol = 1e-14;
constexpr double kBalanceTol = 1e-14;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

void check_orthogonal(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw NotOrthogonal("splitter matrix must be square, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const Eigen::MatrixXd gram = m * m.transpose();
    const double err = max_abs(gram - Eigen::MatrixXd::Identity(m.rows(), m.cols()));
    if (err > kOrthogonalityTol)
        throw NotOrthogonal("splitter is not orthogonal: max |H H^T - I| = " +
                            std::to_string(err));
}

void check_balanced(const Eigen::MatrixXd& m) {
    const double target = 1.0 / std::sqrt(static_cast<double>(m.rows()));
    const double err = (m.cwiseAbs().array() - target).abs().maxCoeff();
    if (err > kBalanceTol)
        throw NotBalanced("splitter entries are not balanced: max ||entry| - " +
                          std::to_string(target) + "| = " + std::to_string(err));
}

}  // namespace

BalancedSplitter sylvester_splitter(int order) {
    if (order < 2 || !std::has_single_bit(static_cast<unsigned>(order)))
        throw UnsupportedOrder(
            order,
            "no real Hadamard matrix of order " + std::to_string(order) +
                " is available from the Sylvester construction (orders are powers of two); "
                "supply a normalized Hadamard matrix of that order via user_splitter");

    // Sylvester sign pattern: sign(i, j) = (-1)^popcount(i & j). Every entry
    // then has the identical magnitude order^(-1/2) bit-for-bit.
    const double scale = std::pow(static_cast<double>(order), -0.5);
    Eigen::MatrixXd h(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            h(i, j) = (std::popcount(static_cast<unsigned>(i & j)) % 2 == 0) ? scale : -scale;
    return {h};
}

BalancedSplitter user_splitter(const Eigen::MatrixXd& m) {
    check_orthogonal(m);
    check_balanced(m);
    return {m};
}

BlockInterferometer build_block_interferometer(const BalancedSplitter& h, const HGraph& g) {
    auto partition = macronode_partition(g);
    const int two_d = 2 * g.opo_count();
    for (const auto& node : partition) {
        if (static_cast<int>(node.members.size()) != two_d)
            throw RaggedMacronode("macronode m=" + std::to_string(node.m) + " has " +
                                  std::to_string(node.members.size()) + " member modes, expected " +
                                  std::to_string(two_d));
    }
    if (h.order() != two_d)
        throw OrderMismatch("splitter order " + std::to_string(h.order()) +
                            " does not match 2D = " + std::to_string(two_d));

    const int n = g.num_modes();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(partition.size() * static_cast<std::size_t>(two_d) * two_d);
    for (const auto& node : partition)
        for (int a = 0; a < two_d; ++a)
            for (int b = 0; b < two_d; ++b)
                triplets.emplace_back(node.members[static_cast<std::size_t>(a)],
                                      node.members[static_cast<std::size_t>(b)],
                                      h.matrix(a, b));
    SparseReal r(n, n);
    r.setFromTriplets(triplets.begin(), triplets.end());
    return {h, std::move(partition), std::move(r)};
}

}  // namespace comblat
