#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "comblat/gaussian.hpp"
#include "comblat/interferometer.hpp"
#include "oracles.hpp"

using namespace comblat;

TEST_CASE("sylvester splitter matches the kronecker construction") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto h2 = sylvester_splitter(2);
    CHECK(h2.matrix(0, 0) == doctest::Approx(r));
    CHECK(h2.matrix(0, 1) == doctest::Approx(r));
    CHECK(h2.matrix(1, 0) == doctest::Approx(r));
    CHECK(h2.matrix(1, 1) == doctest::Approx(-r));

    const auto h4 = sylvester_splitter(4);
    for (int j = 0; j < 4; ++j) {
        CHECK(h4.matrix(0, j) == doctest::Approx(0.5));  // first row all +
        CHECK(h4.matrix(j, 0) == doctest::Approx(0.5));  // first column all +
    }

    for (int order : {2, 4, 8, 16, 32, 64}) {
        const auto h = sylvester_splitter(order);
        CHECK((h.matrix - oracles::sylvester_kron(order)).cwiseAbs().maxCoeff() < 1e-15);
        // Orthogonality at the advertised tolerance.
        const Eigen::MatrixXd gram = h.matrix * h.matrix.transpose();
        CHECK((gram - Eigen::MatrixXd::Identity(order, order)).cwiseAbs().maxCoeff() < 1e-14);
    }

    // Doubling recursion: H(2k) = H(2) kron H(k) after normalization.
    for (int k : {2, 4, 8, 16}) {
        const Eigen::MatrixXd lhs = sylvester_splitter(2 * k).matrix;
        Eigen::MatrixXd rhs(2 * k, 2 * k);
        const Eigen::MatrixXd a = sylvester_splitter(2).matrix;
        const Eigen::MatrixXd b = sylvester_splitter(k).matrix;
        rhs << a(0, 0) * b, a(0, 1) * b, a(1, 0) * b, a(1, 1) * b;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("orders off the power-of-two ladder are refused with guidance") {
    for (int order : {0, 1, 3, 6, 12, 20}) {
        CHECK_THROWS_AS(sylvester_splitter(order), UnsupportedOrder);
    }
    try {
        sylvester_splitter(6);
        FAIL("expected UnsupportedOrder");
    } catch (const UnsupportedOrder& e) {
        CHECK(e.order == 6);
        const std::string msg = e.what();
        CHECK(msg.find("order 6") != std::string::npos);
        CHECK(msg.find("user_splitter") != std::string::npos);
    }
}

TEST_CASE("user splitters are validated, not trusted") {
    // The Sylvester matrix itself passes.
    CHECK_NOTHROW(user_splitter(sylvester_splitter(2).matrix));

    // A non-power-of-two Hadamard matrix passes: order 12 via Paley.
    const Eigen::MatrixXd paley = oracles::paley12_signs() / std::sqrt(12.0);
    const auto h12 = user_splitter(paley);
    CHECK(h12.order() == 12);
    const Eigen::MatrixXd gram = h12.matrix * h12.matrix.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-14);

    // Orthogonal but unbalanced: the identity.
    CHECK_THROWS_AS(user_splitter(Eigen::MatrixXd::Identity(4, 4)), NotBalanced);
    // Balanced magnitudes but not orthogonal: all-ones sign pattern.
    CHECK_THROWS_AS(user_splitter(Eigen::MatrixXd::Constant(4, 4, 0.5)), NotOrthogonal);
    // Not square.
    CHECK_THROWS_AS(user_splitter(Eigen::MatrixXd::Ones(2, 3)), NotOrthogonal);
}

TEST_CASE("block interferometer applies one splitter per macronode") {
    SUBCASE("one OPO, five macronodes") {
        const HGraph g = build_hgraph({{1, 1}}, {-2, 2});
        const auto r = build_block_interferometer(sylvester_splitter(2), g);
        REQUIRE(r.matrix.rows() == 10);
        CHECK(r.macronodes.size() == 5);
        CHECK(r.matrix.nonZeros() == 5 * 4);

        const Eigen::MatrixXd dense = Eigen::MatrixXd(r.matrix);
        CHECK((dense * dense.transpose() - Eigen::MatrixXd::Identity(10, 10))
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);

        // Every entry couples two modes of the same frequency only.
        for (int col = 0; col < r.matrix.outerSize(); ++col)
            for (SparseReal::InnerIterator it(r.matrix, col); it; ++it) {
                CHECK(g.modes[static_cast<std::size_t>(it.row())].n ==
                      g.modes[static_cast<std::size_t>(it.col())].n);
                CHECK(std::abs(std::abs(it.value()) - 1.0 / std::sqrt(2.0)) < 1e-15);
            }
    }

    SUBCASE("two OPOs, seven macronodes, order 4 blocks") {
        const HGraph g = build_hgraph({{1, 1}, {7, 1}}, {-3, 3});
        const auto r = build_block_interferometer(sylvester_splitter(4), g);
        REQUIRE(r.matrix.rows() == 28);
        CHECK(r.macronodes.size() == 7);
        const Eigen::MatrixXd dense = Eigen::MatrixXd(r.matrix);
        CHECK((dense * dense.transpose() - Eigen::MatrixXd::Identity(28, 28))
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);
    }

    SUBCASE("splitter order must equal twice the OPO count") {
        const HGraph g = build_hgraph({{1, 1}}, {-2, 2});
        CHECK_THROWS_AS(build_block_interferometer(sylvester_splitter(4), g), OrderMismatch);
    }

    SUBCASE("conjugated matching stays a projector") {
        const HGraph g = build_hgraph({{1, 1}, {7, 1}}, {-9, 9});
        const auto r = build_block_interferometer(sylvester_splitter(4), g);
        const SparseReal rg = entangled_adjacency(g, r);
        const Eigen::MatrixXd dense = Eigen::MatrixXd(rg);
        const Eigen::MatrixXd p = dense * dense;  // should be R P R^T
        // (RGR^T)^2 = R G^2 R^T = R P R^T: idempotent with eigenvalues 0/1.
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
        const auto mask = matched_mask(g);
        const double matched =
            static_cast<double>(std::count(mask.begin(), mask.end(), true));
        CHECK(p.trace() == doctest::Approx(matched).epsilon(1e-12));
    }
}
