#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rsse/harness.hpp"

using namespace rsse;

namespace {

SimPlan tiny_plan() {
    SimPlan plan;
    plan.target = make_target("dicode");
    plan.iti = ItiModel{0.2, 0.0};
    plan.detectors = {parse_detector("ml"), parse_detector("3")};
    plan.snr_db = {8.0};
    plan.seed = 7;
    plan.block_length = 256;
    plan.min_errors = 100;
    plan.max_bits = 4000;
    return plan;
}

}  // namespace

TEST_CASE("detector specifications parse and label") {
    const DetectorSpec ml = parse_detector("ml");
    CHECK(ml.ml);
    CHECK(ml.label() == "ml");
    const DetectorSpec sub = parse_detector("4,2");
    CHECK_FALSE(sub.ml);
    CHECK(sub.config == std::vector<int>{4, 2});
    CHECK(sub.label() == "[4,2]");
    CHECK(parse_detector(" 4 , 3 , 3 ").config == std::vector<int>{4, 3, 3});
    CHECK_THROWS(parse_detector(""));
    CHECK_THROWS(parse_detector("4,x"));
}

TEST_CASE("plan files parse with overrides and strict keys") {
    const std::string path = "test_plan_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "target = pr2\n"
            << "epsilon = 0.1\n"
            << "configs = ml; 4,2\n"
            << "snr = 8:1:10\n"
            << "seed = 9\n"
            << "block = 512\n"
            << "min_errors = 120\n"
            << "max_bits = 100000\n";
    }
    auto keys = read_plan_file(path);
    std::remove(path.c_str());
    const SimPlan plan = plan_from_keys(keys);
    CHECK(plan.target.name == "pr2");
    CHECK(plan.iti.epsilon == doctest::Approx(0.1));
    CHECK(plan.detectors.size() == 2);
    CHECK(plan.detectors[0].label() == "ml");
    CHECK(plan.detectors[1].label() == "[4,2]");
    CHECK(plan.snr_db == std::vector<double>{8.0, 9.0, 10.0});
    CHECK(plan.seed == 9);
    CHECK(plan.block_length == 512);
    CHECK(plan.min_errors == 120);
    CHECK(plan.max_bits == 100000);

    keys["snr"] = "7.5, 8.5";
    CHECK(plan_from_keys(keys).snr_db == std::vector<double>{7.5, 8.5});

    keys["bogus"] = "1";
    CHECK_THROWS_AS((void)plan_from_keys(keys), std::invalid_argument);
    keys.erase("bogus");
    keys.erase("target");
    CHECK_THROWS_AS((void)plan_from_keys(keys), std::invalid_argument);
}

TEST_CASE("custom tap lists are accepted as targets") {
    std::map<std::string, std::string> keys = {
        {"target", "1 -1"}, {"configs", "ml"}, {"snr", "8"}};
    const SimPlan plan = plan_from_keys(keys);
    REQUIRE(plan.target.coefficients.size() == 2);
    CHECK(plan.target.coefficients[0] == doctest::Approx(1.0));
    CHECK(plan.target.coefficients[1] == doctest::Approx(-1.0));
}

TEST_CASE("plan validation rejects inconsistent settings") {
    SimPlan plan = tiny_plan();
    CHECK_NOTHROW(plan.validate());

    SimPlan bad = plan;
    bad.min_errors = 50;
    CHECK_THROWS(bad.validate());

    bad = plan;
    bad.block_length = 64;  // below 100x memory once memory >= 1
    CHECK_THROWS(bad.validate());

    bad = plan;
    bad.detectors = {parse_detector("4,2")};  // config length 2, memory 1
    CHECK_THROWS(bad.validate());

    bad = plan;
    bad.snr_db.clear();
    CHECK_THROWS(bad.validate());
}

TEST_CASE("simulation runs are deterministic in the seed") {
    const SimPlan plan = tiny_plan();
    const auto a = run_ber(plan);
    const auto b = run_ber(plan);
    CHECK(ber_csv(a) == ber_csv(b));
    REQUIRE(a.size() == 2);
    for (const BerPoint& p : a) {
        CHECK(p.bits > 0);
        CHECK(p.ber == doctest::Approx(
            static_cast<double>(p.errors_a + p.errors_b) /
            static_cast<double>(p.bits)));
    }
    SimPlan other = plan;
    other.seed = 8;
    const auto c = run_ber(other);
    CHECK(ber_csv(a) != ber_csv(c));
}

TEST_CASE("deeply negative SNR drives the error rate to one half") {
    SimPlan plan = tiny_plan();
    plan.snr_db = {-20.0};
    plan.detectors = {parse_detector("ml")};
    plan.min_errors = 1000;
    plan.max_bits = 20000;
    const auto pts = run_ber(plan);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].ber == doctest::Approx(0.5).epsilon(0.08));
}

TEST_CASE("full-subset detection tracks the reference detector closely") {
    SimPlan plan;
    plan.target = make_target("pr2");
    plan.iti = ItiModel{0.1, 0.0};
    plan.detectors = {parse_detector("ml"), parse_detector("4,4")};
    plan.snr_db = {9.0};
    plan.seed = 11;
    plan.block_length = 512;
    plan.min_errors = 150;
    plan.max_bits = 2000000;
    const auto pts = run_ber(plan);
    REQUIRE(pts.size() == 2);
    // the full subset trellis IS the joint trellis: identical error counts
    CHECK(pts[0].errors_a + pts[0].errors_b > 0);
    CHECK(pts[0].errors_a == pts[1].errors_a);
    CHECK(pts[0].errors_b == pts[1].errors_b);
    CHECK(pts[0].bits == pts[1].bits);
}

TEST_CASE("csv schema stays stable") {
    std::vector<BerPoint> pts;
    pts.push_back(BerPoint{"ml", 8.0, 10000, 12, 13, 0.0025});
    const std::string text = ber_csv(pts);
    CHECK(text.rfind("detector,snr_db,bits,errors_a,errors_b,ber\n", 0) == 0);
    CHECK(text.find("ml,8,10000,12,13,0.0025") != std::string::npos);
}

TEST_CASE("threshold crossings interpolate on a log scale") {
    std::vector<BerPoint> pts;
    // ml: crosses 1e-4 exactly halfway in log-ber between 9 and 10 dB
    pts.push_back(BerPoint{"ml", 9.0, 1000000, 500, 500, 1e-3});
    pts.push_back(BerPoint{"ml", 10.0, 1000000, 50, 50, 1e-5});
    // sub: same shape shifted right by 0.4 dB
    pts.push_back(BerPoint{"[3]", 9.4, 1000000, 500, 500, 1e-3});
    pts.push_back(BerPoint{"[3]", 10.4, 1000000, 50, 50, 1e-5});
    const auto losses = snr_loss_from_points(pts, 1e-4);
    REQUIRE(losses.size() == 2);
    CHECK(losses[0].detector == "ml");
    CHECK(losses[0].reached);
    CHECK(losses[0].snr_db == doctest::Approx(9.5).epsilon(1e-12));
    CHECK(losses[0].loss_db == doctest::Approx(0.0));
    CHECK(losses[1].detector == "[3]");
    CHECK(losses[1].reached);
    CHECK(losses[1].snr_db == doctest::Approx(9.9).epsilon(1e-12));
    CHECK(losses[1].loss_db == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("threshold crossings handle unreachable targets") {
    std::vector<BerPoint> pts;
    pts.push_back(BerPoint{"ml", 9.0, 1000, 10, 10, 2e-2});
    pts.push_back(BerPoint{"ml", 10.0, 1000, 5, 5, 1e-2});
    pts.push_back(BerPoint{"[3]", 9.0, 1000, 20, 20, 4e-2});
    const auto losses = snr_loss_from_points(pts, 1e-4);
    REQUIRE(losses.size() == 2);
    CHECK_FALSE(losses[0].reached);
    CHECK_FALSE(losses[1].reached);

    std::vector<BerPoint> no_ml;
    no_ml.push_back(BerPoint{"[3]", 9.0, 1000, 20, 20, 4e-2});
    CHECK_THROWS_AS((void)snr_loss_from_points(no_ml, 1e-4),
                    std::invalid_argument);
}

TEST_CASE("curves stop early below the configured error rate") {
    SimPlan plan = tiny_plan();
    plan.snr_db = {8.0, 30.0, 31.0};
    plan.detectors = {parse_detector("ml")};
    plan.stop_below_ber = 1e-4;
    plan.min_errors = 100;
    plan.max_bits = 100000;
    const auto pts = run_ber(plan);
    // at 30 dB the measured rate collapses far below the cutoff, so the
    // 31 dB point is never simulated
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].snr_db == doctest::Approx(8.0));
    CHECK(pts[1].snr_db == doctest::Approx(30.0));
}

TEST_CASE("reproduction bundles carry stable file names") {
    const auto res = reproduce("VIII", 1);
    REQUIRE(res.files.size() == 1);
    CHECK(res.files[0].first == "table_viii_epr4_offset.csv");
    const std::string& body = res.files[0].second;
    CHECK(body.rfind("config,", 0) == 0);
    CHECK(body.find("ml_dmin") != std::string::npos);
    CHECK(body.find("[4,3,3]") != std::string::npos);
    CHECK_THROWS((void)reproduce("nope", 1));
}
