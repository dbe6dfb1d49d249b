// Viterbi detection on full or subset trellises in the transformed (+,-)
// coordinates: weighted branch metrics, decision-feedback survivor windows
// (one survivor ML window per subset state), parallel-branch pre-selection,
// and delayed-release traceback.  Also a joint Viterbi reference detector in
// the original (a, b) coordinates for oracle comparisons.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rsse/channel.hpp"
#include "rsse/trellis.hpp"
#include "rsse/types.hpp"
#include "rsse/wssjd.hpp"

namespace rsse {

struct DecodeResult {
    TrackPair decoded;          // all decided steps, in time order
    double final_metric = 0.0;  // best path metric after the last step
};

// Streaming detector core.  Feed samples with step(); decisions older than
// the traceback depth T = max(32, 8 (nu+1)) are appended to decisions() as
// canonical joint-symbol indices; finish() flushes the tail from the best
// end state.  Tie-breaking is deterministic: smaller predecessor state
// index first, then smaller input index.
class Detector {
  public:
    Detector(const SubsetTrellis& trellis, const ItiModel& iti);

    void reset();
    void step(double r_plus, double r_minus);
    void finish();

    const std::vector<int>& decisions() const { return decisions_; }
    double best_metric() const;

    int traceback_depth() const { return depth_; }

    // Noiseless branch outputs (y+, y-) for a packed survivor window (base-4
    // joint indices, most recent most significant) extended by an input.
    std::pair<double, double> branch_outputs(int packed_window, int z) const {
        const std::size_t at =
            static_cast<std::size_t>(packed_window) * 4 + static_cast<std::size_t>(z);
        return {out_plus_[at], out_minus_[at]};
    }

    // Pre-selection inside one parallel group from a given state's survivor
    // window: returns the chosen input index.  Symmetric two-way groups use
    // the component threshold rule; four-way groups and the asymmetric
    // channel compare full branch metrics.
    int pre_select(int state, int group, double r_plus, double r_minus) const;

    // --- test access -------------------------------------------------------
    // Overrides path metrics and survivor windows (windows newest-first as
    // joint indices; -1 marks a virtual zero symbol from warm-up).
    void force_state(const std::vector<double>& metrics,
                     const std::vector<std::vector<int>>& windows);
    const std::vector<double>& path_metrics() const { return metric_; }
    std::vector<int> survivor_window(int state) const;

  private:
    std::pair<double, double> outputs_for(int state, int z) const;
    void release_one();

    const SubsetTrellis& trellis_;
    ItiModel iti_;
    int nu_;
    int num_states_;
    int hi_;     // 4^(nu-1), place value of the newest packed-window digit
    int depth_;  // traceback depth T

    // noiseless output lookup, index = packed full window (input + survivor)
    std::vector<double> out_plus_, out_minus_;

    // per-state data, double-buffered across a step
    std::vector<double> metric_, metric_next_;
    std::vector<std::int8_t> window_, window_next_;  // [state*nu + k], -1 virtual
    std::vector<int> packed_, packed_next_;          // packed window, -1 if any virtual

    // decision history ring buffer, slots (depth_+1) x num_states
    std::vector<std::int16_t> hist_pred_;
    std::vector<std::int8_t> hist_input_;

    long long steps_ = 0;
    std::vector<int> decisions_;
};

// Runs the full detection pipeline on transformed samples and returns the
// decoded tracks (all steps) with the final best metric.
DecodeResult detect(const TransformedReceived& received,
                    const SubsetTrellis& trellis, const ItiModel& iti);

// Joint Viterbi on the untransformed head readings (4^nu states, plain
// Euclidean metric (r_a - y_a)^2 + (r_b - y_b)^2), with the same traceback
// and tie-breaking conventions as Detector.  Oracle only; guarded to
// 4^nu <= 4096.
DecodeResult detect_ml_reference(const ReceivedPair& received,
                                 const ChannelTarget& target,
                                 const ItiModel& iti);

// Bit errors against the ground truth, excluding `guard` symbols at each
// end of the block (the decode-length invariant: counted length =
// N - 2*guard per track).
struct ErrorCount {
    long long errors_a = 0;
    long long errors_b = 0;
    long long counted_bits = 0;  // both tracks combined
};
ErrorCount count_errors(const DecodeResult& result, const TrackPair& truth,
                        int guard);

}  // namespace rsse
