#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "comblat/hgraph.hpp"

namespace comblat {

/// Real orthogonal matrix with equal-magnitude entries (a normalized
/// Hadamard matrix), acting as the balanced splitter within one macronode.
struct BalancedSplitter {
    Eigen::MatrixXd matrix;

    int order() const { return static_cast<int>(matrix.rows()); }
};

/// Block-diagonal orthogonal matrix applying the same splitter to every
/// macronode, with block slots ordered 2*(opo-1) + (0 for Z, 1 for Y).
struct BlockInterferometer {
    BalancedSplitter block;
    std::vector<Macronode> macronodes;
    SparseReal matrix;
};

/// Sylvester-construction splitter of the given order (must be a power of
/// two >= 2): H_1^{kron log2(order)} with H_1 = (1/sqrt 2) [[1,1],[1,-1]].
BalancedSplitter sylvester_splitter(int order);

/// Wrap and validate a user-supplied balanced orthogonal matrix
/// (e.g. a normalized Hadamard matrix of an order Sylvester cannot reach).
BalancedSplitter user_splitter(const Eigen::MatrixXd& m);

/// Assemble R = directsum of one splitter block per macronode of g.
BlockInterferometer build_block_interferometer(const BalancedSplitter& h, const HGraph& g);

}  // namespace comblat
