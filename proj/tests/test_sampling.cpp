#include "doctest.h"

#include <cmath>

#include "comblat/gaussian.hpp"
#include "comblat/sampling.hpp"

using namespace comblat;

TEST_CASE("counter mix produces (0, 1] uniforms with no stream overlap") {
    // A value is a pure function of (seed, counter).
    CHECK(detail::uniform_from_counter(7, 0) == detail::uniform_from_counter(7, 0));
    CHECK(detail::uniform_from_counter(7, 0) != detail::uniform_from_counter(8, 0));
    CHECK(detail::uniform_from_counter(7, 0) != detail::uniform_from_counter(7, 1));

    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = detail::uniform_from_counter(42, static_cast<std::uint64_t>(i));
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi <= 1.0);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("fixed seeds reproduce bit for bit across runs and worker counts") {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(6, 6) * 0.5;
    sigma(0, 1) = sigma(1, 0) = 0.2;

    const Eigen::MatrixXd a = sample_quadratures(sigma, 999, 123, 1);
    const Eigen::MatrixXd b = sample_quadratures(sigma, 999, 123, 1);
    const Eigen::MatrixXd c = sample_quadratures(sigma, 999, 123, 4);
    const Eigen::MatrixXd d = sample_quadratures(sigma, 999, 123, 7);
    CHECK((a.array() == b.array()).all());
    CHECK((a.array() == c.array()).all());
    CHECK((a.array() == d.array()).all());

    const Eigen::MatrixXd e = sample_quadratures(sigma, 999, 124, 1);
    CHECK_FALSE((a.array() == e.array()).all());
}

TEST_CASE("sample covariance converges to the target covariance") {
    const std::int64_t n = 200000;

    SUBCASE("vacuum") {
        const Eigen::MatrixXd sigma = 0.5 * Eigen::MatrixXd::Identity(4, 4);
        const Eigen::MatrixXd samples = sample_quadratures(sigma, n, 2026, 4);
        const Eigen::VectorXd var = column_variances(samples);
        // Gaussian variance estimator: SE = var * sqrt(2 / (n - 1)).
        const double se = 0.5 * std::sqrt(2.0 / static_cast<double>(n - 1));
        for (int j = 0; j < 4; ++j) CHECK(std::abs(var(j) - 0.5) < 5 * se);

        // Columns are independent.
        const Eigen::MatrixXd centered =
            samples.rowwise() - samples.colwise().mean();
        const Eigen::MatrixXd cov =
            centered.transpose() * centered / static_cast<double>(n - 1);
        Eigen::MatrixXd off = cov;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < 5 * se);
    }

    SUBCASE("correlated squeezed pair") {
        HGraph g;
        g.modes = {{1, Pol::Z, 0}, {1, Pol::Z, 1}};
        g.edges = {{0, 1}};
        g.window = {0, 1};
        const auto target = covariance_from_graph(initial_graph(g, 0.5));
        const Eigen::MatrixXd samples = sample_quadratures(target.sigma, n, 99, 2);
        const Eigen::MatrixXd centered =
            samples.rowwise() - samples.colwise().mean();
        const Eigen::MatrixXd cov =
            centered.transpose() * centered / static_cast<double>(n - 1);
        // Entrywise within 5 crude standard errors of the largest variance.
        const double se =
            target.sigma.diagonal().maxCoeff() * std::sqrt(2.0 / static_cast<double>(n - 1));
        CHECK((cov - target.sigma).cwiseAbs().maxCoeff() < 5 * se);
    }
}

TEST_CASE("degenerate sampling inputs are rejected") {
    const Eigen::MatrixXd sigma = 0.5 * Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(sample_quadratures(sigma, -1, 0), ValidationError);
    CHECK_THROWS_AS(sample_quadratures(sigma, 10, 0, 0), ValidationError);
    CHECK_THROWS_AS(sample_quadratures(Eigen::MatrixXd::Zero(3, 4), 10, 0),
                    DimensionMismatch);
    CHECK_THROWS_AS(sample_quadratures(-sigma, 10, 0), NotPositiveDefinite);
    CHECK_THROWS_AS(column_variances(Eigen::MatrixXd::Zero(1, 3)), ValidationError);
    CHECK_NOTHROW(column_variances(sample_quadratures(sigma, 2, 0)));
}
