// Deterministic random number generation for the simulator.
//
// The exact algorithms are part of the reproducibility contract and are
// frozen by unit tests:
//
//   * splitmix64 (Steele/Lea/Flood) drives seeding, stream derivation and
//     per-block seed hashing:
//       s += 0x9E3779B97F4A7C15
//       z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//       z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
//
//   * xoshiro256++ 1.0 (Blackman/Vigna) is the uniform core.  Stream k of
//     master seed s is seeded with the first four splitmix64 outputs of
//     initial state  s ^ (0x9E3779B97F4A7C15 * (k + 1)).
//
//   * Gaussians come from Box-Muller on two consecutive uniforms
//       u1 = ((next() >> 11) + 1) * 2^-53   in (0, 1]
//       u2 = (next() >> 11) * 2^-53          in [0, 1)
//       z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)
//     returned in that order (the second value is cached).
//
// Independent streams keep the two tracks' data and the two heads' noise
// decoupled: changing how many samples one stream consumes never perturbs
// the values another stream produces.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace rsse {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Advances the splitmix64 state in place and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ 1.0 with Box-Muller Gaussian output.
class Rng {
  public:
    // Stream `stream` of master seed `seed`; distinct streams are
    // statistically independent.
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t sm = seed ^ (kGolden * (stream + 1));
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Fair +/-1 from the top bit.
    int next_bit() { return (next_u64() >> 63) ? -1 : +1; }

    // Standard normal deviate (Box-Muller, second value cached).
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite; u2 in [0,1).
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Dedicated stream indices (see generate_inputs / transmit).
inline constexpr std::uint64_t kStreamTrackA = 0;
inline constexpr std::uint64_t kStreamTrackB = 1;
inline constexpr std::uint64_t kStreamNoiseA = 2;
inline constexpr std::uint64_t kStreamNoiseB = 3;

// Order-sensitive hash of a master seed and up to three indices, used to
// derive statistically independent per-block seeds in the Monte Carlo
// harness.  Chained splitmix64 over the mixed-in words.
inline std::uint64_t hash_seed(std::uint64_t master, std::uint64_t i0,
                               std::uint64_t i1 = 0, std::uint64_t i2 = 0) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= (i0 + 1) * 0xBF58476D1CE4E5B9ULL;
    (void)splitmix64(s);
    s ^= (i1 + 1) * 0x94D049BB133111EBULL;
    (void)splitmix64(s);
    s ^= (i2 + 1) * kGolden;
    return splitmix64(s);
}

}  // namespace rsse
