#pragma once

namespace comblat {

// Dense checks (covariance, purity, numeric nullifier covariance, sampling)
// are skipped above this many qumodes; sparse analytics still run.
inline constexpr int kDenseCheckLimit = 600;

// Verification gates.
inline constexpr double kNullifierTol = 1e-10;   // max |numeric - analytic| on matched modes
inline constexpr double kPurityTol = 1e-9;       // |symplectic eigenvalue - 1/2|
inline constexpr double kZScoreMax = 5.0;        // Monte Carlo variance z-score
inline constexpr double kCoarseRelThreshold = 1e-6;

}  // namespace comblat
