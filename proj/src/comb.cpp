#include "comblat/comb.hpp"

#include <cmath>

namespace comblat {

namespace {

// Floor division (C++ '/' truncates toward zero).
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool is_odd(std::int64_t v) { return v % 2 != 0; }

void check_spec(const OpoSpec& spec) {
    if (spec.delta_m < 1)
        throw ValidationError("OpoSpec.delta_m must be a positive integer, got " +
                              std::to_string(spec.delta_m));
    if (spec.copies < 1)
        throw ValidationError("OpoSpec.copies must be a positive integer, got " +
                              std::to_string(spec.copies));
}

}  // namespace

PumpIndices pump_indices(const OpoSpec& spec) {
    check_spec(spec);
    const std::int64_t dm = spec.delta_m;
    const std::int64_t m = spec.copies;
    PumpIndices p;
    if (m == 1) {
        p.y = dm;
        p.z = -dm;
    } else {
        p.z = m * dm + (m - 1);
        p.y = -m * dm + (m - 1);
    }
    if (!is_odd(p.y) || !is_odd(p.z))
        throw EvenPumpIndex("pump indices (" + std::to_string(p.y) + ", " +
                            std::to_string(p.z) + ") for delta_m=" + std::to_string(dm) +
                            ", copies=" + std::to_string(m) +
                            " are even; nondegenerate downconversion requires an odd pump index");
    return p;
}

double pump_frequency(std::int64_t p, double omega0, double delta_omega) {
    if (!(delta_omega > 0.0))
        throw NonpositiveFSR("free spectral range must be positive, got " +
                             std::to_string(delta_omega));
    return 2.0 * omega0 + static_cast<double>(p) * delta_omega;
}

std::int64_t compound_to_frequency(const CompoundIndex& c, int copies) {
    if (copies < 1)
        throw ValidationError("copies must be a positive integer, got " +
                              std::to_string(copies));
    if (c.k < 0 || c.k >= copies)
        throw CopyLabelOutOfRange("copy label k=" + std::to_string(c.k) +
                                  " outside [0, " + std::to_string(copies) + ")");
    const std::int64_t mm = static_cast<std::int64_t>(copies) * c.m + c.k;
    return (c.m % 2 == 0) ? mm : -mm + (copies - 1);
}

CompoundIndex frequency_to_compound(std::int64_t n, int copies) {
    if (copies < 1)
        throw ValidationError("copies must be a positive integer, got " +
                              std::to_string(copies));
    const std::int64_t cc = copies;

    // Even branch: n = M*m + k with 0 <= k < M.
    std::int64_t m = floor_div(n, cc);
    std::int64_t k = n - cc * m;
    if (!is_odd(m)) return {m, static_cast<int>(k)};

    // Odd branch: M*m + k = (M - 1) - n.
    const std::int64_t v = (cc - 1) - n;
    m = floor_div(v, cc);
    k = v - cc * m;
    if (is_odd(m)) return {m, static_cast<int>(k)};

    throw InternalIndexError("no compound preimage for n=" + std::to_string(n) +
                             ", copies=" + std::to_string(copies));
}

}  // namespace comblat
