#include "comblat/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace comblat {

namespace {

using Complex = std::complex<double>;

constexpr int kOraclesMaxModes = 512;

void check_matching(const HGraph& g) {
    auto [count, ok] = matching_projector_check(g);
    (void)count;
    if (!ok)
        throw NotAMatching("H-graph is not a weight-1 matching (G^2 != P)");
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0))
        throw ValidationError("squeezing parameter alpha must be nonnegative, got " +
                              std::to_string(alpha));
}

SparseComplex symmetrized(const SparseComplex& m) {
    SparseComplex mt = SparseComplex(m.transpose());
    return ((m + mt) * Complex(0.5, 0.0)).pruned();
}

}  // namespace

SqueezingScalars squeezing_scalars(double alpha) {
    check_alpha(alpha);
    const double x = 2.0 * alpha;
    return {std::cosh(x), std::sinh(x), 1.0 / std::cosh(x), std::tanh(x)};
}

GraphState initial_graph(const HGraph& g, double alpha) {
    check_alpha(alpha);
    check_matching(g);
    const auto sc = squeezing_scalars(alpha);
    const auto matched = matched_mask(g);
    const int n = g.num_modes();

    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) + 2 * g.edges.size());
    for (int i = 0; i < n; ++i)
        triplets.emplace_back(i, i, Complex(0.0, matched[static_cast<std::size_t>(i)] ? sc.c : 1.0));
    for (const auto& [a, b] : g.edges) {
        triplets.emplace_back(a, b, Complex(0.0, -sc.s));
        triplets.emplace_back(b, a, Complex(0.0, -sc.s));
    }
    SparseComplex z(n, n);
    z.setFromTriplets(triplets.begin(), triplets.end());
    return {std::move(z), alpha, g.modes};
}

Eigen::MatrixXcd expm_graph_oracle(const HGraph& g, double alpha) {
    const int n = g.num_modes();
    if (n > kOraclesMaxModes)
        throw OracleSizeExceeded("dense exponential oracle limited to N <= " +
                                 std::to_string(kOraclesMaxModes) + ", got N = " +
                                 std::to_string(n));
    Eigen::MatrixXd dense_g = Eigen::MatrixXd(adjacency_matrix(g));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_g);
    Eigen::VectorXd exp_vals = (-2.0 * alpha * es.eigenvalues().array()).exp();
    Eigen::MatrixXd expm =
        es.eigenvectors() * exp_vals.asDiagonal() * es.eigenvectors().transpose();
    return Complex(0.0, 1.0) * expm;
}

GraphState apply_interferometer(const GraphState& state, const BlockInterferometer& r) {
    if (r.matrix.rows() != state.z.rows())
        throw DimensionMismatch("interferometer acts on " + std::to_string(r.matrix.rows()) +
                                " modes but state has " + std::to_string(state.z.rows()));
    SparseComplex rc = r.matrix.cast<Complex>();
    SparseComplex z = rc * state.z * SparseComplex(rc.transpose());
    return {symmetrized(z), state.alpha, state.mode_map};
}

SparseReal entangled_adjacency(const HGraph& g, const BlockInterferometer& r) {
    if (r.matrix.rows() != g.num_modes())
        throw DimensionMismatch("interferometer order " + std::to_string(r.matrix.rows()) +
                                " does not match mode count " + std::to_string(g.num_modes()));
    SparseReal rgrt = r.matrix * adjacency_matrix(g) * SparseReal(r.matrix.transpose());
    SparseReal rgrt_t = SparseReal(rgrt.transpose());
    return ((rgrt + rgrt_t) * 0.5).pruned();
}

GraphState cluster_graph(const HGraph& g, const BlockInterferometer& r, double alpha) {
    check_alpha(alpha);
    check_matching(g);
    const auto sc = squeezing_scalars(alpha);
    SparseReal rgrt = entangled_adjacency(g, r);
    const int n = g.num_modes();

    SparseComplex z(n, n);
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) + static_cast<std::size_t>(rgrt.nonZeros()));
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, Complex(0.0, sc.epsilon));
    for (int col = 0; col < rgrt.outerSize(); ++col)
        for (SparseReal::InnerIterator it(rgrt, col); it; ++it)
            triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                  Complex(sc.t * it.value(), 0.0));
    z.setFromTriplets(triplets.begin(), triplets.end());
    return {std::move(z), alpha, g.modes};
}

QuadratureCovariance covariance_from_graph(const GraphState& state) {
    const int n = state.num_modes();
    Eigen::MatrixXcd z = Eigen::MatrixXcd(state.z);
    Eigen::MatrixXd x = z.real();
    Eigen::MatrixXd y = z.imag();

    Eigen::LLT<Eigen::MatrixXd> llt(y);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("Im Z is not positive definite");
    Eigen::MatrixXd y_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    // Symmetrize the solve result before composing blocks.
    y_inv = 0.5 * (y_inv + y_inv.transpose()).eval();

    Eigen::MatrixXd qq = 0.5 * y_inv;
    Eigen::MatrixXd qp = 0.5 * (y_inv * x);
    Eigen::MatrixXd pp = 0.5 * (y + x * y_inv * x);

    Eigen::MatrixXd sigma(2 * n, 2 * n);
    sigma.topLeftCorner(n, n) = qq;
    sigma.topRightCorner(n, n) = qp;
    sigma.bottomLeftCorner(n, n) = qp.transpose();
    sigma.bottomRightCorner(n, n) = pp;
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    return {std::move(sigma)};
}

Eigen::VectorXd symplectic_eigenvalues(const QuadratureCovariance& cov) {
    const int n = cov.num_modes();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.sigma);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw NotPositiveDefinite("covariance matrix is not positive definite");
    Eigen::MatrixXd sqrt_sigma = es.operatorSqrt();

    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);

    // sqrt(Sigma) Omega sqrt(Sigma) is skew-symmetric; its singular values
    // are the symplectic eigenvalues, each appearing twice.
    Eigen::MatrixXd skew = sqrt_sigma * omega * sqrt_sigma;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(skew);
    Eigen::VectorXd sv = svd.singularValues();  // descending, paired
    Eigen::VectorXd nu(n);
    for (int i = 0; i < n; ++i) nu(i) = 0.5 * (sv(2 * i) + sv(2 * i + 1));
    return nu;
}

NullifierSet nullifier_rows(double theta, const BlockInterferometer& r, const HGraph& g,
                            double alpha) {
    const int n = g.num_modes();
    if (r.matrix.rows() != n)
        throw DimensionMismatch("interferometer order " + std::to_string(r.matrix.rows()) +
                                " does not match mode count " + std::to_string(n));
    const auto sc = squeezing_scalars(alpha);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);

    SparseReal rt = SparseReal(r.matrix.transpose());
    SparseReal grt = (adjacency_matrix(g) * rt).pruned();
    SparseReal q_part = rt - sc.t * grt;   // coefficient of q at angle theta
    SparseReal p_part = rt + sc.t * grt;   // coefficient of p at angle theta

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(q_part.nonZeros() + p_part.nonZeros()));
    auto append = [&](const SparseReal& m, double factor, int col_offset) {
        if (factor == 0.0) return;
        for (int col = 0; col < m.outerSize(); ++col)
            for (SparseReal::InnerIterator it(m, col); it; ++it) {
                const double v = factor * it.value();
                if (v != 0.0)
                    triplets.emplace_back(static_cast<int>(it.row()),
                                          static_cast<int>(it.col()) + col_offset, v);
            }
    };
    append(q_part, ct, 0);
    append(p_part, st, n);

    SparseReal rows(n, 2 * n);
    rows.setFromTriplets(triplets.begin(), triplets.end());
    return {theta, std::move(rows)};
}

SparseReal nullifier_cov_analytic(double theta, const HGraph& g, double alpha) {
    const auto sc = squeezing_scalars(alpha);
    const int n = g.num_modes();
    const double diag = 0.5 * sc.epsilon;
    const double edge = -0.5 * sc.epsilon * sc.t * std::cos(2.0 * theta);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) + 2 * g.edges.size());
    for (int i = 0; i < n; ++i) triplets.emplace_back(i, i, diag);
    if (edge != 0.0) {
        for (const auto& [a, b] : g.edges) {
            triplets.emplace_back(a, b, edge);
            triplets.emplace_back(b, a, edge);
        }
    }
    SparseReal m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

Eigen::MatrixXd nullifier_cov_numeric(const QuadratureCovariance& cov, const NullifierSet& rows) {
    if (rows.rows.cols() != cov.sigma.rows())
        throw DimensionMismatch("nullifier rows span " + std::to_string(rows.rows.cols()) +
                                " quadratures but covariance has " +
                                std::to_string(cov.sigma.rows()));
    Eigen::MatrixXd dense_rows = Eigen::MatrixXd(rows.rows);
    return dense_rows * cov.sigma * dense_rows.transpose();
}

double matched_max_deviation(const Eigen::MatrixXd& numeric, const SparseReal& analytic,
                             const HGraph& g) {
    if (numeric.rows() != analytic.rows() || numeric.cols() != analytic.cols())
        throw DimensionMismatch("numeric and analytic covariance dimensions differ");
    const auto matched = matched_mask(g);
    Eigen::MatrixXd diff = numeric - Eigen::MatrixXd(analytic);
    double dev = 0.0;
    for (int i = 0; i < diff.rows(); ++i) {
        if (!matched[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < diff.cols(); ++j) {
            if (!matched[static_cast<std::size_t>(j)]) continue;
            dev = std::max(dev, std::abs(diff(i, j)));
        }
    }
    return dev;
}

std::vector<std::vector<std::int64_t>> two_tone_support(const NullifierSet& rows,
                                                        const HGraph& g) {
    const int n = g.num_modes();
    if (rows.rows.rows() != n || rows.rows.cols() != 2 * n)
        throw DimensionMismatch("nullifier rows do not match the H-graph mode count");

    std::vector<std::set<std::int64_t>> support(static_cast<std::size_t>(n));
    for (int col = 0; col < rows.rows.outerSize(); ++col) {
        const int mode = col % n;
        const std::int64_t freq = std::abs(g.modes[static_cast<std::size_t>(mode)].n);
        for (SparseReal::InnerIterator it(rows.rows, col); it; ++it)
            if (it.value() != 0.0) support[static_cast<std::size_t>(it.row())].insert(freq);
    }
    std::vector<std::vector<std::int64_t>> result(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        result[static_cast<std::size_t>(i)].assign(support[static_cast<std::size_t>(i)].begin(),
                                                   support[static_cast<std::size_t>(i)].end());
    return result;
}

}  // namespace comblat
