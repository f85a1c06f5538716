#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "comblat/errors.hpp"
#include "comblat/gaussian.hpp"

namespace comblat {

namespace detail {

// Stateless counter-based generator: every value is a pure function of
// (seed, counter), so any partition of the index space over workers
// reproduces the same stream bit for bit.
std::uint64_t mix64(std::uint64_t x);
double uniform_from_counter(std::uint64_t seed, std::uint64_t counter);
double normal_from_counter(std::uint64_t seed, std::uint64_t counter);

}  // namespace detail

// Zero-mean Gaussian samples with the given covariance, one sample per row.
// The result depends only on (sigma, count, seed); `workers` only controls
// how the fill is parallelized and never changes the output.
Eigen::MatrixXd sample_quadratures(const Eigen::MatrixXd& sigma, std::int64_t count,
                                   std::uint64_t seed, int workers = 1);

// Unbiased sample variance of each column.
Eigen::VectorXd column_variances(const Eigen::MatrixXd& samples);

}  // namespace comblat
