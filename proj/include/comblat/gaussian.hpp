#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "comblat/hgraph.hpp"
#include "comblat/interferometer.hpp"

namespace comblat {

using SparseComplex = Eigen::SparseMatrix<std::complex<double>>;

/// Hyperbolic scalars of the squeezing parameter: c = cosh 2a, s = sinh 2a,
/// epsilon = sech 2a, t = tanh 2a.
struct SqueezingScalars {
    double c = 1.0;
    double s = 0.0;
    double epsilon = 1.0;
    double t = 0.0;
};

SqueezingScalars squeezing_scalars(double alpha);

/// Gaussian pure state with wavefunction exp(i q^T Z q / 2): a complex
/// symmetric matrix Z with Im Z positive definite, plus the overall
/// squeezing parameter and the canonical mode ordering it lives on.
struct GraphState {
    SparseComplex z;
    double alpha = 0.0;
    std::vector<QumodeId> mode_map;

    int num_modes() const { return static_cast<int>(z.rows()); }
};

/// Real symmetric 2N x 2N quadrature covariance, ordered (q_1..q_N, p_1..p_N),
/// in vacuum-variance-1/2 units.
struct QuadratureCovariance {
    Eigen::MatrixXd sigma;

    int num_modes() const { return static_cast<int>(sigma.rows()) / 2; }
};

/// One family of theta-indexed approximate nullifiers. Row i holds the
/// (q, p) coefficients of (R^T q_theta)_i - t (G R^T q_{-theta})_i as a real
/// N x 2N matrix.
struct NullifierSet {
    double theta = 0.0;
    SparseReal rows;

    int num_modes() const { return static_cast<int>(rows.rows()); }
};

/// Graph of the OPO output state: ic on the matched diagonal, -is on the
/// H-graph edges, i on unmatched vacuum modes. Equals i exp(-2 alpha G)
/// exactly in exact arithmetic.
GraphState initial_graph(const HGraph& g, double alpha);

/// Dense oracle i exp(-2 alpha G) via eigendecomposition (test-scale only,
/// N <= 512).
Eigen::MatrixXcd expm_graph_oracle(const HGraph& g, double alpha);

/// Graph update Z -> R Z R^T under the macronode-local interferometer.
GraphState apply_interferometer(const GraphState& state, const BlockInterferometer& r);

/// Cluster-state form i epsilon I + t R G R^T (phase-shift equivalent to the
/// interfered state on matched modes).
GraphState cluster_graph(const HGraph& g, const BlockInterferometer& r, double alpha);

/// R G R^T as a real sparse symmetric matrix (the cluster adjacency).
SparseReal entangled_adjacency(const HGraph& g, const BlockInterferometer& r);

/// Covariance of the state with graph Z = X + iY:
/// Sigma_qq = Y^{-1}/2, Sigma_qp = Y^{-1} X / 2, Sigma_pp = (Y + X Y^{-1} X)/2.
QuadratureCovariance covariance_from_graph(const GraphState& state);

/// Symplectic spectrum of a covariance matrix (N values; all 1/2 for a pure
/// state in these units).
Eigen::VectorXd symplectic_eigenvalues(const QuadratureCovariance& cov);

/// Coefficient rows of the Hermitian nullifiers n_theta = R^T q_theta -
/// t G R^T q_{-theta}, with q_theta = q cos theta + p sin theta.
NullifierSet nullifier_rows(double theta, const BlockInterferometer& r, const HGraph& g,
                            double alpha);

/// Closed-form nullifier covariance (epsilon/2)(I - t G cos 2 theta).
/// Valid on matched modes; boundary rows have plain vacuum variance 1/2.
SparseReal nullifier_cov_analytic(double theta, const HGraph& g, double alpha);

/// Bilinear form rows * Sigma * rows^T.
Eigen::MatrixXd nullifier_cov_numeric(const QuadratureCovariance& cov, const NullifierSet& rows);

/// Max |numeric - analytic| over matched x matched index pairs.
double matched_max_deviation(const Eigen::MatrixXd& numeric, const SparseReal& analytic,
                             const HGraph& g);

/// Per nullifier row, the distinct |frequency index| labels carrying nonzero
/// coefficients: two for matched rows (at t > 0), one for boundary rows.
std::vector<std::vector<std::int64_t>> two_tone_support(const NullifierSet& rows,
                                                        const HGraph& g);

}  // namespace comblat
