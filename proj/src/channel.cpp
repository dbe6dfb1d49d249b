#include "rsse/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "rsse/rng.hpp"

namespace rsse {

double ChannelTarget::energy() const {
    double e = 0.0;
    for (double h : coefficients) e += h * h;
    return e;
}

namespace {

// Smallest power-of-ten scaling (up to 10^6) that makes every tap integer.
long long find_tap_scale(const std::vector<double>& taps) {
    long long scale = 1;
    for (int k = 0; k <= 6; ++k) {
        bool ok = true;
        for (double h : taps) {
            const double scaled = h * static_cast<double>(scale);
            if (std::abs(scaled - std::round(scaled)) > 1e-9) {
                ok = false;
                break;
            }
        }
        if (ok) return scale;
        scale *= 10;
        (void)k;
    }
    throw std::invalid_argument(
        "channel taps have no exact decimal scaling (need <= 6 decimal places)");
}

ChannelTarget finish_target(std::vector<double> taps, std::string name) {
    if (taps.size() < 2) throw std::invalid_argument("target needs memory >= 1");
    if (taps[0] == 0.0) throw std::invalid_argument("target needs h_0 != 0");
    ChannelTarget t;
    t.name = std::move(name);
    t.coefficients = std::move(taps);
    t.tap_scale = find_tap_scale(t.coefficients);
    t.int_taps.reserve(t.coefficients.size());
    for (double h : t.coefficients)
        t.int_taps.push_back(static_cast<long long>(
            std::llround(h * static_cast<double>(t.tap_scale))));
    return t;
}

}  // namespace

ChannelTarget make_target(const std::string& preset) {
    if (preset == "dicode") return finish_target({1.0, -1.0}, preset);
    if (preset == "pr2") return finish_target({1.0, 2.0, 1.0}, preset);
    if (preset == "epr4") return finish_target({1.0, 1.0, -1.0, -1.0}, preset);
    if (preset == "mp1") return finish_target({1.0, 1.6, 1.1, 0.4}, preset);
    if (preset == "mp2") return finish_target({1.0, 1.9, 1.6, 0.8, 0.3}, preset);
    throw std::invalid_argument("unknown channel target preset: " + preset);
}

ChannelTarget make_target(const std::vector<double>& taps,
                          const std::string& name) {
    return finish_target(taps, name);
}

void validate_iti(const ItiModel& iti) {
    if (!(iti.epsilon >= 0.0) || !(iti.epsilon < 1.0))
        throw std::invalid_argument("ITI epsilon must satisfy 0 <= eps < 1");
    if (iti.delta_epsilon == 0.0) return;
    if (!(iti.delta_epsilon > 0.0) || !(iti.delta_epsilon <= iti.epsilon))
        throw std::invalid_argument(
            "ITI asymmetry must satisfy 0 <= deps <= eps");
}

double snr_to_sigma(const ChannelTarget& target, double snr_db) {
    // SNR = 10 log10(||h||^2 / (2 sigma^2))  =>  sigma^2 = ||h||^2 / (2 * 10^(SNR/10))
    const double sigma_sq = target.energy() / (2.0 * std::pow(10.0, snr_db / 10.0));
    return std::sqrt(sigma_sq);
}

TrackPair generate_inputs(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("generate_inputs needs n >= 1");
    Rng rng_a(seed, kStreamTrackA);
    Rng rng_b(seed, kStreamTrackB);
    TrackPair out;
    out.track_a.resize(n);
    out.track_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.track_a[i] = rng_a.next_bit();
    for (std::size_t i = 0; i < n; ++i) out.track_b[i] = rng_b.next_bit();
    return out;
}

std::vector<double> convolve_zero_state(const std::vector<int>& x,
                                        const std::vector<double>& taps) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const std::size_t kmax = std::min(taps.size() - 1, i);
        for (std::size_t k = 0; k <= kmax; ++k)
            acc += taps[k] * static_cast<double>(x[i - k]);
        y[i] = acc;
    }
    return y;
}

ReceivedPair transmit(const TrackPair& inputs, const ChannelTarget& target,
                      const ItiModel& iti, double sigma, std::uint64_t seed) {
    if (inputs.track_a.size() != inputs.track_b.size())
        throw std::invalid_argument("transmit needs equal-length tracks");
    if (sigma < 0.0) throw std::invalid_argument("transmit needs sigma >= 0");
    validate_iti(iti);

    const std::vector<double> isi_a =
        convolve_zero_state(inputs.track_a, target.coefficients);
    const std::vector<double> isi_b =
        convolve_zero_state(inputs.track_b, target.coefficients);

    const double mix_ab = iti.epsilon - iti.delta_epsilon;  // track b into head a
    const double mix_ba = iti.epsilon + iti.delta_epsilon;  // track a into head b

    const std::size_t n = inputs.track_a.size();
    ReceivedPair out;
    out.r_a.resize(n);
    out.r_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.r_a[i] = isi_a[i] + mix_ab * isi_b[i];
        out.r_b[i] = mix_ba * isi_a[i] + isi_b[i];
    }
    if (sigma > 0.0) {
        Rng rng_a(seed, kStreamNoiseA);
        Rng rng_b(seed, kStreamNoiseB);
        for (std::size_t i = 0; i < n; ++i) out.r_a[i] += sigma * rng_a.next_gaussian();
        for (std::size_t i = 0; i < n; ++i) out.r_b[i] += sigma * rng_b.next_gaussian();
    }
    return out;
}

}  // namespace rsse
