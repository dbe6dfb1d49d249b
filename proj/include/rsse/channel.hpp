// Two-head two-track channel model: per-track partial-response ISI, the
// symmetric or asymmetric inter-track interference mixing matrix, and
// additive white Gaussian noise, all in the original (a, b) coordinates.
//
// Head readings follow
//     r_a = 1 * (x_a * h) + (eps - deps) * (x_b * h) + noise_a
//     r_b = (eps + deps) * (x_a * h) + 1 * (x_b * h) + noise_b
// where * is convolution with all-zero channel state before time 0 and the
// output truncated at the input length.  deps = 0 is the symmetric channel.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsse/types.hpp"

namespace rsse {

// A partial-response target h_0..h_nu.  Taps are also kept in an exact
// integer scaling (int_taps[i] = coefficients[i] * tap_scale) so that
// structural zero tests in the error-event search are integer-exact.
struct ChannelTarget {
    std::string name;                  // preset label, or "custom"
    std::vector<double> coefficients;  // h_0..h_nu, h_0 != 0
    std::vector<long long> int_taps;   // coefficients * tap_scale, exact
    long long tap_scale = 1;

    int memory() const { return static_cast<int>(coefficients.size()) - 1; }
    double energy() const;  // ||h||^2
};

// Builds one of the preset targets: dicode = [1,-1], pr2 = [1,2,1],
// epr4 = [1,1,-1,-1], mp1 = [1,1.6,1.1,0.4], mp2 = [1,1.9,1.6,0.8,0.3].
// Throws std::invalid_argument for an unknown name.
ChannelTarget make_target(const std::string& preset);

// Builds a target from explicit taps (h_0 != 0, at least two taps).  The
// integer scaling is the smallest power of ten that makes every tap an
// integer (up to 1e-6 decimal resolution); throws if none exists.
ChannelTarget make_target(const std::vector<double>& taps,
                          const std::string& name = "custom");

// Inter-track interference parameters.  Symmetric mixing matrix is
// [[1, eps],[eps, 1]]; asymmetric is [[1, eps-deps],[eps+deps, 1]] with
// 0 <= deps <= eps.
struct ItiModel {
    double epsilon = 0.0;
    double delta_epsilon = 0.0;
};

// Throws std::invalid_argument unless 0 <= eps < 1 and either deps == 0 or
// 0 < deps <= eps.
void validate_iti(const ItiModel& iti);

// Noise standard deviation sigma for a given SNR, from
// SNR(dB) = 10 log10(||h||^2 / (2 sigma^2)).
double snr_to_sigma(const ChannelTarget& target, double snr_db);

// Two independent equiprobable +/-1 sequences of length n, deterministic in
// the seed (track a and track b use independent streams of the seed).
// Throws for n = 0.
TrackPair generate_inputs(std::size_t n, std::uint64_t seed);

// Convolution of a +/-1 (or small-integer) sequence with the target taps,
// zero initial state, output truncated at the input length.
std::vector<double> convolve_zero_state(const std::vector<int>& x,
                                        const std::vector<double>& taps);

// Full channel: ISI per track, ITI mixing, and i.i.d. N(0, sigma^2) noise
// per head (independent streams per head).  sigma = 0 gives the noiseless
// output.  Deterministic given the seed.
ReceivedPair transmit(const TrackPair& inputs, const ChannelTarget& target,
                      const ItiModel& iti, double sigma, std::uint64_t seed);

}  // namespace rsse
