// Monte Carlo BER harness: simulation plans, deterministic seeded runs,
// CSV output, SNR-loss interpolation against the ML reference, and canned
// reproduction reports (distance tables and BER curve families).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rsse/channel.hpp"
#include "rsse/trellis.hpp"

namespace rsse {

// One detector under test: the joint ML reference or a subset-trellis
// configuration.
struct DetectorSpec {
    bool ml = false;
    std::vector<int> config;  // subset counts, empty when ml
    std::string label() const;  // "ml" or "[4,2]"
};

DetectorSpec parse_detector(const std::string& text);  // "ml" | "4,2"

struct SimPlan {
    ChannelTarget target;
    ItiModel iti;
    std::vector<DetectorSpec> detectors;
    std::vector<double> snr_db;
    std::uint64_t seed = 1;
    int block_length = 4096;
    long long min_errors = 500;       // stop once reached (combined tracks)
    long long max_bits = 200000000;   // hard cap on counted bits per point

    // Optional per-detector curve cutoff: when > 0, once a detector's point
    // comes in with ber < stop_below_ber, its remaining (higher) SNR points
    // are skipped and emit no rows.  Keeps loss-table runs from spending
    // the full bit budget far past the BER of interest.  0 disables.
    double stop_below_ber = 0.0;

    // Throws on an invalid plan: every detector must be constructible for
    // the target, min_errors >= 100, block_length >= 100*memory, nonempty
    // detector and SNR lists.
    void validate() const;
};

struct BerPoint {
    std::string detector;
    double snr_db = 0.0;
    long long bits = 0;      // counted bits, both tracks combined
    long long errors_a = 0;  // track-a bit errors
    long long errors_b = 0;  // track-b bit errors
    double ber = 0.0;        // (errors_a + errors_b) / bits
};

// Runs the full plan.  Blocks are seeded per (SNR index, block index) from
// the master seed and shared across detectors (common random numbers, so
// loss comparisons are paired), and the stopping rule is evaluated on the
// deterministic block-index prefix, so results are a pure function of the
// plan.
std::vector<BerPoint> run_ber(const SimPlan& plan);

// CSV serialization: header `detector,snr_db,bits,errors_a,errors_b,ber`,
// floats with 6 significant digits.
std::string ber_csv(const std::vector<BerPoint>& points);

struct SnrLoss {
    std::string detector;
    bool reached = false;      // curve brackets the target BER
    double snr_db = 0.0;       // interpolated SNR at the target BER
    double loss_db = 0.0;      // snr_db - (ML snr_db); 0 for ml itself
};

// Log-linear interpolation of each detector's curve at ber_target; loss is
// measured against the "ml" detector, which must be present and bracket the
// target.  Curves that do not bracket the target come back reached=false.
std::vector<SnrLoss> snr_loss_from_points(const std::vector<BerPoint>& points,
                                          double ber_target);
std::vector<SnrLoss> snr_loss_at(const SimPlan& plan, double ber_target);

// ----- plan files ---------------------------------------------------------

// Flat key=value text: target, epsilon, depsilon, configs (semicolon list,
// e.g. "ml;4,2;3,3"), snr ("8:0.5:14" or "8;9;10"), seed, block,
// min_errors, max_bits.  '#' starts a comment.
std::map<std::string, std::string> read_plan_file(const std::string& path);
SimPlan plan_from_keys(const std::map<std::string, std::string>& keys);

// ----- canned reproductions ----------------------------------------------

// reproduce(id) builds the report files for a canned study:
//   "II", "III":       SNR-loss tables (PR2 / EPR4) at BER 1e-4
//   "V", "VI", "VII":  dominant early-merged event tables (mp1 / PR2 / EPR4)
//   "VIII", "IX":      early-merge minimum-distance grids for the
//                      asymmetric EPR4 channel (eps 0.1 / 0.4)
//   "9".."14":         BER curve CSVs (PR2, dicode, EPR4, mp1, mp2,
//                      asymmetric EPR4 offsets)
// Returns (filename, content) pairs; the caller decides where to write.
struct ReproduceResult {
    std::string id;
    std::vector<std::pair<std::string, std::string>> files;
};
ReproduceResult reproduce(const std::string& id, std::uint64_t seed = 1);

}  // namespace rsse
