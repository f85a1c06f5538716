#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "comblat/errors.hpp"

namespace comblat {

/// Polarization of a comb mode. Canonical ordering puts Z before Y.
enum class Pol : int { Z = 0, Y = 1 };

inline const char* to_string(Pol p) { return p == Pol::Z ? "Z" : "Y"; }

/// One field mode of the comb: OPO number (1-based), polarization, and the
/// dimensionless frequency index n.
struct QumodeId {
    int opo = 1;
    Pol pol = Pol::Z;
    std::int64_t n = 0;

    friend bool operator==(const QumodeId&, const QumodeId&) = default;

    // Canonical total ordering: opo ascending, Z before Y, n ascending.
    friend auto operator<=>(const QumodeId& a, const QumodeId& b) {
        if (auto c = a.opo <=> b.opo; c != 0) return c;
        if (auto c = static_cast<int>(a.pol) <=> static_cast<int>(b.pol); c != 0) return c;
        return a.n <=> b.n;
    }
};

/// Per-OPO configuration: macronode spacing (delta_m) and number of copies.
struct OpoSpec {
    std::int64_t delta_m = 1;
    int copies = 1;
};

/// Truncation of the (ideally unbounded) comb in frequency index n.
/// Symmetric windows (n_min = -n_max) give a contiguous macronode range.
struct CombWindow {
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;

    std::int64_t size() const { return n_max - n_min + 1; }
    bool contains(std::int64_t n) const { return n >= n_min && n <= n_max; }
    bool symmetric() const { return n_min == -n_max; }

    friend bool operator==(const CombWindow&, const CombWindow&) = default;
};

/// Two-component macronode index for multi-copy lattices: node index m
/// within copy k (0 <= k < copies).
struct CompoundIndex {
    std::int64_t m = 0;
    int k = 0;

    friend bool operator==(const CompoundIndex&, const CompoundIndex&) = default;
};

/// Pump indices per polarization for one OPO.
struct PumpIndices {
    std::int64_t y = 0;
    std::int64_t z = 0;

    friend bool operator==(const PumpIndices&, const PumpIndices&) = default;
};

/// Macronode index of frequency index n: m = (-1)^n n.
constexpr std::int64_t macronode_of(std::int64_t n) {
    return (n % 2 == 0) ? n : -n;
}

/// Inverse of macronode_of: the unique n with macronode_of(n) = m.
constexpr std::int64_t frequency_of(std::int64_t m) {
    return (m % 2 == 0) ? m : -m;
}

/// Pump indices for one OPO. Single copy: (y, z) = (delta_m, -delta_m).
/// M > 1 copies: z = M*delta_m + (M-1), y = -M*delta_m + (M-1).
/// Throws EvenPumpIndex when either value is even (nondegenerate
/// downconversion requires an odd pump index).
PumpIndices pump_indices(const OpoSpec& spec);

/// Physical pump frequency 2*omega0 + p*delta_omega for pump index p.
double pump_frequency(std::int64_t p, double omega0, double delta_omega);

/// Frequency index of compound macronode (m, k) in an M-copy layout:
/// n = M*m + k for even m, n = -(M*m + k) + (M-1) for odd m.
std::int64_t compound_to_frequency(const CompoundIndex& c, int copies);

/// Inverse of compound_to_frequency; total and bijective for every M >= 1.
/// Reduces to macronode_of when copies = 1.
CompoundIndex frequency_to_compound(std::int64_t n, int copies);

}  // namespace comblat
