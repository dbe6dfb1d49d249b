// Core value types shared across the library: binary track symbols, the
// sum/difference (joint) symbol alphabet, and helpers for moving between
// the two representations.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace rsse {

// One step of the joint two-track constellation in sum/difference
// coordinates.  The four points are (+2,0), (0,+2), (0,-2), (-2,0); the
// canonical index order below is used everywhere (state encoding, input
// enumeration, tie-breaking).
struct SumDiffSymbol {
    int z_plus = 0;   // one of {-2, 0, +2}
    int z_minus = 0;  // one of {-2, 0, +2}
    bool operator==(const SumDiffSymbol&) const = default;
};

// Joint symbol index -> sum/difference components, in canonical order.
inline constexpr std::array<SumDiffSymbol, 4> kJointSymbols = {
    SumDiffSymbol{+2, 0},  // index 0: (x_a, x_b) = (+1, +1)
    SumDiffSymbol{0, +2},  // index 1: (x_a, x_b) = (+1, -1)
    SumDiffSymbol{0, -2},  // index 2: (x_a, x_b) = (-1, +1)
    SumDiffSymbol{-2, 0},  // index 3: (x_a, x_b) = (-1, -1)
};

// Joint symbol index -> per-track bits (x_a, x_b), consistent with
// kJointSymbols via z+ = x_a + x_b, z- = x_a - x_b.
inline constexpr std::array<std::array<int, 2>, 4> kJointBits = {{
    {+1, +1},
    {+1, -1},
    {-1, +1},
    {-1, -1},
}};

// Per-track bits -> joint symbol index.
inline constexpr int joint_index(int xa, int xb) {
    return (xa > 0) ? ((xb > 0) ? 0 : 1) : ((xb > 0) ? 2 : 3);
}

// Sum/difference symbol -> joint index; returns -1 if not in the
// constellation.
inline constexpr int joint_index(const SumDiffSymbol& z) {
    for (int i = 0; i < 4; ++i)
        if (kJointSymbols[static_cast<std::size_t>(i)] == z) return i;
    return -1;
}

// A pair of equal-length +/-1 sequences, one per track.
struct TrackPair {
    std::vector<int> track_a;
    std::vector<int> track_b;
};

// Head readings in the original (a, b) coordinates.
struct ReceivedPair {
    std::vector<double> r_a;
    std::vector<double> r_b;
};

// Received samples after the sum/difference output transform.
struct TransformedReceived {
    std::vector<double> r_plus;
    std::vector<double> r_minus;
};

}  // namespace rsse
