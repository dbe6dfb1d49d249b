#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rsse/channel.hpp"
#include "rsse/rng.hpp"

using namespace rsse;

TEST_CASE("presets carry the expected taps, memory and energy") {
    const ChannelTarget dicode = make_target("dicode");
    CHECK(dicode.coefficients == std::vector<double>{1.0, -1.0});
    CHECK(dicode.memory() == 1);
    CHECK(dicode.energy() == doctest::Approx(2.0));

    const ChannelTarget pr2 = make_target("pr2");
    CHECK(pr2.coefficients == std::vector<double>{1.0, 2.0, 1.0});
    CHECK(pr2.energy() == doctest::Approx(6.0));

    const ChannelTarget epr4 = make_target("epr4");
    CHECK(epr4.coefficients == std::vector<double>{1.0, 1.0, -1.0, -1.0});
    CHECK(epr4.energy() == doctest::Approx(4.0));

    const ChannelTarget mp1 = make_target("mp1");
    CHECK(mp1.coefficients == std::vector<double>{1.0, 1.6, 1.1, 0.4});
    CHECK(mp1.energy() == doctest::Approx(4.93));

    const ChannelTarget mp2 = make_target("mp2");
    CHECK(mp2.coefficients == std::vector<double>{1.0, 1.9, 1.6, 0.8, 0.3});
    CHECK(mp2.memory() == 4);
    CHECK(mp2.energy() == doctest::Approx(7.9));

    CHECK_THROWS_AS(make_target("unknown"), std::invalid_argument);
}

TEST_CASE("integer tap scaling is exact") {
    const ChannelTarget pr2 = make_target("pr2");
    CHECK(pr2.tap_scale == 1);
    CHECK(pr2.int_taps == std::vector<long long>{1, 2, 1});

    const ChannelTarget mp1 = make_target("mp1");
    CHECK(mp1.tap_scale == 10);
    CHECK(mp1.int_taps == std::vector<long long>{10, 16, 11, 4});

    const ChannelTarget custom = make_target(std::vector<double>{1.0, -0.25});
    CHECK(custom.int_taps[0] == custom.tap_scale);
    CHECK(custom.int_taps[1] * -4 == custom.tap_scale);
}

TEST_CASE("custom targets validate their taps") {
    CHECK_THROWS_AS(make_target(std::vector<double>{0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_target(std::vector<double>{1.0}),
                    std::invalid_argument);
    const ChannelTarget t = make_target(std::vector<double>{1.0, -1.0}, "x");
    CHECK(t.memory() == 1);
}

TEST_CASE("interference parameters are validated") {
    ItiModel ok1;  // 0, 0
    validate_iti(ok1);
    ItiModel ok2{0.3, 0.1};
    validate_iti(ok2);
    ItiModel ok3{0.2, 0.2};  // full asymmetry is the boundary case
    validate_iti(ok3);
    CHECK_THROWS_AS(validate_iti(ItiModel{1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_iti(ItiModel{-0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_iti(ItiModel{0.2, -0.05}), std::invalid_argument);
    CHECK_THROWS_AS(validate_iti(ItiModel{0.2, 0.3}), std::invalid_argument);
}

TEST_CASE("snr definition round-trips") {
    const ChannelTarget pr2 = make_target("pr2");
    for (double snr : {0.0, 6.5, 10.0}) {
        const double sigma = snr_to_sigma(pr2, snr);
        CHECK(10.0 * std::log10(pr2.energy() / (2.0 * sigma * sigma)) ==
              doctest::Approx(snr).epsilon(1e-12));
    }
}

TEST_CASE("zero-state convolution on a worked example") {
    const std::vector<double> y =
        convolve_zero_state({1, -1, 1}, {1.0, 2.0, 1.0});
    REQUIRE(y.size() == 3);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(1.0));   // -1 + 2
    CHECK(y[2] == doctest::Approx(0.0));   // 1 - 2 + 1
}

TEST_CASE("input generation is deterministic, +/-1, and track-independent") {
    const TrackPair x = generate_inputs(512, 99);
    const TrackPair y = generate_inputs(512, 99);
    CHECK(x.track_a == y.track_a);
    CHECK(x.track_b == y.track_b);
    CHECK(x.track_a != x.track_b);
    for (int v : x.track_a) CHECK((v == 1 || v == -1));
    CHECK_THROWS(generate_inputs(0, 1));
}

TEST_CASE("noiseless transmit mixes the per-track ISI outputs") {
    const ChannelTarget dicode = make_target("dicode");
    ItiModel iti{0.2, 0.0};
    TrackPair x;
    x.track_a = {1, 1, -1};
    x.track_b = {1, -1, -1};
    const ReceivedPair r = transmit(x, dicode, iti, 0.0, 1);
    // conv a: 1, 0, -2 ; conv b: 1, -2, 0
    REQUIRE(r.r_a.size() == 3);
    CHECK(r.r_a[0] == doctest::Approx(1.0 + 0.2 * 1.0));
    CHECK(r.r_a[1] == doctest::Approx(0.0 + 0.2 * -2.0));
    CHECK(r.r_a[2] == doctest::Approx(-2.0 + 0.2 * 0.0));
    CHECK(r.r_b[0] == doctest::Approx(0.2 * 1.0 + 1.0));
    CHECK(r.r_b[1] == doctest::Approx(0.2 * 0.0 + -2.0));
    CHECK(r.r_b[2] == doctest::Approx(0.2 * -2.0 + 0.0));
}

TEST_CASE("asymmetric transmit uses eps -/+ deps per head") {
    const ChannelTarget dicode = make_target("dicode");
    ItiModel iti{0.3, 0.1};
    TrackPair x;
    x.track_a = {1};
    x.track_b = {-1};
    const ReceivedPair r = transmit(x, dicode, iti, 0.0, 1);
    CHECK(r.r_a[0] == doctest::Approx(1.0 + (0.3 - 0.1) * -1.0));
    CHECK(r.r_b[0] == doctest::Approx((0.3 + 0.1) * 1.0 + -1.0));
}

TEST_CASE("noise is reproducible and has the requested power") {
    const ChannelTarget pr2 = make_target("pr2");
    ItiModel iti{0.1, 0.0};
    const std::size_t n = 100000;
    const TrackPair x = generate_inputs(n, 3);
    const double sigma = 0.7;
    const ReceivedPair r1 = transmit(x, pr2, iti, sigma, 17);
    const ReceivedPair r2 = transmit(x, pr2, iti, sigma, 17);
    CHECK(r1.r_a == r2.r_a);
    CHECK(r1.r_b == r2.r_b);

    const ReceivedPair clean = transmit(x, pr2, iti, 0.0, 17);
    double sa = 0.0, qa = 0.0, sb = 0.0, qb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double na = r1.r_a[k] - clean.r_a[k];
        const double nb = r1.r_b[k] - clean.r_b[k];
        sa += na;
        qa += na * na;
        sb += nb;
        qb += nb * nb;
    }
    const double va = qa / n - (sa / n) * (sa / n);
    const double vb = qb / n - (sb / n) * (sb / n);
    CHECK(va == doctest::Approx(sigma * sigma).epsilon(0.05));
    CHECK(vb == doctest::Approx(sigma * sigma).epsilon(0.05));
}
