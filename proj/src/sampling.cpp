#include "comblat/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Cholesky>

namespace comblat {

namespace detail {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

double uniform_from_counter(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL * (counter + 1));
    // Top 53 bits -> (0, 1]; never returns 0 so log() below is safe.
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

double normal_from_counter(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = uniform_from_counter(seed, 2 * counter);
    const double u2 = uniform_from_counter(seed, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

Eigen::MatrixXd sample_quadratures(const Eigen::MatrixXd& sigma, std::int64_t count,
                                   std::uint64_t seed, int workers) {
    if (sigma.rows() != sigma.cols())
        throw DimensionMismatch("covariance matrix must be square");
    if (count < 0) throw ValidationError("sample count must be nonnegative");
    if (workers < 1) throw ValidationError("worker count must be positive");

    const Eigen::Index dim = sigma.rows();
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("covariance matrix is not positive definite");
    Eigen::MatrixXd l = llt.matrixL();

    Eigen::MatrixXd samples(count, dim);
    auto fill_rows = [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd z(dim);
        for (std::int64_t row = begin; row < end; ++row) {
            const std::uint64_t base = static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(dim);
            for (Eigen::Index j = 0; j < dim; ++j)
                z(j) = detail::normal_from_counter(seed, base + static_cast<std::uint64_t>(j));
            samples.row(row) = (l * z).transpose();
        }
    };

    if (workers == 1 || count < 2 * workers) {
        fill_rows(0, count);
        return samples;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& t : pool) t.join();
    return samples;
}

Eigen::VectorXd column_variances(const Eigen::MatrixXd& samples) {
    const Eigen::Index n = samples.rows();
    if (n < 2) throw ValidationError("variance needs at least two samples");
    Eigen::RowVectorXd mean = samples.colwise().mean();
    return (samples.rowwise() - mean).colwise().squaredNorm() / static_cast<double>(n - 1);
}

}  // namespace comblat
