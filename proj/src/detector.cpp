#include "rsse/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ipow(int base, int exp) {
    int v = 1;
    while (exp-- > 0) v *= base;
    return v;
}

}  // namespace

Detector::Detector(const SubsetTrellis& trellis, const ItiModel& iti)
    : trellis_(trellis), iti_(iti) {
    validate_iti(iti_);
    nu_ = trellis_.memory();
    if (nu_ > 8) throw std::invalid_argument("detector supports memory <= 8");
    num_states_ = trellis_.num_states();
    hi_ = ipow(4, nu_ - 1);
    depth_ = std::max(32, 8 * (nu_ + 1));

    // Per-(full ML window, input) noiseless outputs.  The window is packed
    // base-4, most recent digit most significant; the input extends it at
    // the front.
    const int windows = ipow(4, nu_);
    out_plus_.resize(static_cast<std::size_t>(windows) * 4);
    out_minus_.resize(static_cast<std::size_t>(windows) * 4);
    const auto& h = trellis_.target().coefficients;
    std::vector<SumDiffSymbol> window(static_cast<std::size_t>(nu_) + 1);
    for (int w = 0; w < windows; ++w) {
        int digits = w;
        for (int k = nu_; k >= 1; --k) {
            const int base = ipow(4, nu_ - k);
            const int d = (digits / base) % 4;
            window[static_cast<std::size_t>(k)] = kJointSymbols[static_cast<std::size_t>(d)];
        }
        for (int z = 0; z < 4; ++z) {
            window[0] = kJointSymbols[static_cast<std::size_t>(z)];
            double conv_p = 0.0, conv_m = 0.0;
            for (int k = 0; k <= nu_; ++k) {
                conv_p += h[static_cast<std::size_t>(k)] * window[static_cast<std::size_t>(k)].z_plus;
                conv_m += h[static_cast<std::size_t>(k)] * window[static_cast<std::size_t>(k)].z_minus;
            }
            double yp = conv_p, ym = conv_m;
            if (iti_.delta_epsilon != 0.0) {
                yp += iti_.delta_epsilon / (1.0 + iti_.epsilon) * conv_m;
                ym += iti_.delta_epsilon / (iti_.epsilon - 1.0) * conv_p;
            }
            out_plus_[static_cast<std::size_t>(w) * 4 + static_cast<std::size_t>(z)] = yp;
            out_minus_[static_cast<std::size_t>(w) * 4 + static_cast<std::size_t>(z)] = ym;
        }
    }

    hist_pred_.resize(static_cast<std::size_t>(depth_ + 1) * num_states_);
    hist_input_.resize(static_cast<std::size_t>(depth_ + 1) * num_states_);
    reset();
}

void Detector::reset() {
    metric_.assign(static_cast<std::size_t>(num_states_), 0.0);
    metric_next_.assign(static_cast<std::size_t>(num_states_), kInf);
    window_.assign(static_cast<std::size_t>(num_states_) * nu_, -1);
    window_next_.assign(static_cast<std::size_t>(num_states_) * nu_, -1);
    packed_.assign(static_cast<std::size_t>(num_states_), -1);
    packed_next_.assign(static_cast<std::size_t>(num_states_), -1);
    steps_ = 0;
    decisions_.clear();
}

std::pair<double, double> Detector::outputs_for(int state, int z) const {
    const int packed = packed_[static_cast<std::size_t>(state)];
    if (packed >= 0) return branch_outputs(packed, z);
    // Warm-up: virtual zero symbols contribute nothing.
    const auto& h = trellis_.target().coefficients;
    double conv_p = h[0] * kJointSymbols[static_cast<std::size_t>(z)].z_plus;
    double conv_m = h[0] * kJointSymbols[static_cast<std::size_t>(z)].z_minus;
    for (int k = 1; k <= nu_; ++k) {
        const int d = window_[static_cast<std::size_t>(state) * nu_ + (k - 1)];
        if (d < 0) continue;
        conv_p += h[static_cast<std::size_t>(k)] * kJointSymbols[static_cast<std::size_t>(d)].z_plus;
        conv_m += h[static_cast<std::size_t>(k)] * kJointSymbols[static_cast<std::size_t>(d)].z_minus;
    }
    double yp = conv_p, ym = conv_m;
    if (iti_.delta_epsilon != 0.0) {
        yp += iti_.delta_epsilon / (1.0 + iti_.epsilon) * conv_m;
        ym += iti_.delta_epsilon / (iti_.epsilon - 1.0) * conv_p;
    }
    return {yp, ym};
}

int Detector::pre_select(int state, int group, double r_plus, double r_minus) const {
    const auto& members = trellis_.input_groups()[static_cast<std::size_t>(group)];
    if (members.size() == 1) return members[0];
    if (iti_.delta_epsilon == 0.0 && members.size() == 2) {
        // The two symbols differ in exactly one component; threshold that
        // component at the midpoint of the two candidate outputs.
        const auto [yp0, ym0] = outputs_for(state, members[0]);
        const auto [yp1, ym1] = outputs_for(state, members[1]);
        const SumDiffSymbol& s0 = kJointSymbols[static_cast<std::size_t>(members[0])];
        const SumDiffSymbol& s1 = kJointSymbols[static_cast<std::size_t>(members[1])];
        double d0, d1;
        if (s0.z_plus != s1.z_plus) {
            d0 = r_plus - yp0;
            d1 = r_plus - yp1;
        } else {
            d0 = r_minus - ym0;
            d1 = r_minus - ym1;
        }
        return (d0 * d0 <= d1 * d1) ? members[0] : members[1];
    }
    // Four-way group or asymmetric channel: explicit metrics.
    int best = members[0];
    double best_bm = kInf;
    for (int z : members) {
        const auto [yp, ym] = outputs_for(state, z);
        const double bm = branch_metric(r_plus, r_minus, yp, ym, iti_);
        if (bm < best_bm) {
            best_bm = bm;
            best = z;
        }
    }
    return best;
}

void Detector::step(double r_plus, double r_minus) {
    const int S = num_states_;
    const std::size_t slot =
        static_cast<std::size_t>(steps_ % (depth_ + 1)) * static_cast<std::size_t>(S);
    std::fill(metric_next_.begin(), metric_next_.end(), kInf);
    const auto& groups = trellis_.input_groups();

    for (int p = 0; p < S; ++p) {
        const double mp = metric_[static_cast<std::size_t>(p)];
        if (!(mp < kInf)) continue;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            // Pre-select one input inside the parallel group, then extend.
            int z;
            double bm;
            if (groups[g].size() == 1) {
                z = groups[g][0];
                const auto [yp, ym] = outputs_for(p, z);
                bm = branch_metric(r_plus, r_minus, yp, ym, iti_);
            } else {
                z = pre_select(p, static_cast<int>(g), r_plus, r_minus);
                const auto [yp, ym] = outputs_for(p, z);
                bm = branch_metric(r_plus, r_minus, yp, ym, iti_);
            }
            const int t = trellis_.successor(p, z);
            const double cand = mp + bm;
            if (cand < metric_next_[static_cast<std::size_t>(t)]) {
                metric_next_[static_cast<std::size_t>(t)] = cand;
                hist_pred_[slot + static_cast<std::size_t>(t)] = static_cast<std::int16_t>(p);
                hist_input_[slot + static_cast<std::size_t>(t)] = static_cast<std::int8_t>(z);
                // Survivor window: chosen input, then the predecessor's
                // window shifted by one.
                std::int8_t* dst = &window_next_[static_cast<std::size_t>(t) * nu_];
                const std::int8_t* src = &window_[static_cast<std::size_t>(p) * nu_];
                dst[0] = static_cast<std::int8_t>(z);
                for (int k = 1; k < nu_; ++k) dst[k] = src[k - 1];
                const int pp = packed_[static_cast<std::size_t>(p)];
                if (pp >= 0) {
                    packed_next_[static_cast<std::size_t>(t)] = z * hi_ + pp / 4;
                } else {
                    int packed = 0;
                    bool real = true;
                    for (int k = 0; k < nu_; ++k) {
                        if (dst[k] < 0) {
                            real = false;
                            break;
                        }
                        packed = packed * 4 + dst[k];
                    }
                    packed_next_[static_cast<std::size_t>(t)] = real ? packed : -1;
                }
            }
        }
    }

    metric_.swap(metric_next_);
    window_.swap(window_next_);
    packed_.swap(packed_next_);
    ++steps_;

    if (steps_ > depth_) release_one();
    if ((steps_ & 1023) == 0) {
        double lo = kInf;
        for (double m : metric_) lo = std::min(lo, m);
        if (lo > 0.0 && lo < kInf)
            for (double& m : metric_) m -= lo;
    }
}

double Detector::best_metric() const {
    double lo = kInf;
    for (double m : metric_) lo = std::min(lo, m);
    return lo;
}

void Detector::release_one() {
    int cur = 0;
    double lo = kInf;
    for (int s = 0; s < num_states_; ++s) {
        if (metric_[static_cast<std::size_t>(s)] < lo) {
            lo = metric_[static_cast<std::size_t>(s)];
            cur = s;
        }
    }
    const long long target = steps_ - 1 - depth_;
    for (long long k = steps_ - 1; k > target; --k) {
        const std::size_t slot =
            static_cast<std::size_t>(k % (depth_ + 1)) * static_cast<std::size_t>(num_states_);
        cur = hist_pred_[slot + static_cast<std::size_t>(cur)];
    }
    const std::size_t slot =
        static_cast<std::size_t>(target % (depth_ + 1)) * static_cast<std::size_t>(num_states_);
    decisions_.push_back(hist_input_[slot + static_cast<std::size_t>(cur)]);
}

void Detector::finish() {
    if (steps_ == 0) return;
    const long long released = std::max(0LL, steps_ - depth_);
    int cur = 0;
    double lo = kInf;
    for (int s = 0; s < num_states_; ++s) {
        if (metric_[static_cast<std::size_t>(s)] < lo) {
            lo = metric_[static_cast<std::size_t>(s)];
            cur = s;
        }
    }
    std::vector<int> tail;
    tail.reserve(static_cast<std::size_t>(steps_ - released));
    for (long long k = steps_ - 1; k >= released; --k) {
        const std::size_t slot =
            static_cast<std::size_t>(k % (depth_ + 1)) * static_cast<std::size_t>(num_states_);
        tail.push_back(hist_input_[slot + static_cast<std::size_t>(cur)]);
        cur = hist_pred_[slot + static_cast<std::size_t>(cur)];
    }
    decisions_.insert(decisions_.end(), tail.rbegin(), tail.rend());
}

void Detector::force_state(const std::vector<double>& metrics,
                           const std::vector<std::vector<int>>& windows) {
    if (static_cast<int>(metrics.size()) != num_states_ ||
        static_cast<int>(windows.size()) != num_states_)
        throw std::invalid_argument("force_state size mismatch");
    metric_ = metrics;
    for (int s = 0; s < num_states_; ++s) {
        const auto& w = windows[static_cast<std::size_t>(s)];
        if (static_cast<int>(w.size()) != nu_)
            throw std::invalid_argument("force_state window length mismatch");
        int packed = 0;
        bool real = true;
        for (int k = 0; k < nu_; ++k) {
            window_[static_cast<std::size_t>(s) * nu_ + k] =
                static_cast<std::int8_t>(w[static_cast<std::size_t>(k)]);
            if (w[static_cast<std::size_t>(k)] < 0)
                real = false;
            else
                packed = packed * 4 + w[static_cast<std::size_t>(k)];
        }
        packed_[static_cast<std::size_t>(s)] = real ? packed : -1;
    }
}

std::vector<int> Detector::survivor_window(int state) const {
    std::vector<int> w(static_cast<std::size_t>(nu_));
    for (int k = 0; k < nu_; ++k)
        w[static_cast<std::size_t>(k)] = window_[static_cast<std::size_t>(state) * nu_ + k];
    return w;
}

DecodeResult detect(const TransformedReceived& received,
                    const SubsetTrellis& trellis, const ItiModel& iti) {
    if (received.r_plus.empty())
        throw std::invalid_argument("detect needs a nonempty block");
    if (received.r_plus.size() != received.r_minus.size())
        throw std::invalid_argument("detect needs equal-length components");
    Detector det(trellis, iti);
    for (std::size_t i = 0; i < received.r_plus.size(); ++i)
        det.step(received.r_plus[i], received.r_minus[i]);
    const double final_metric = det.best_metric();
    det.finish();

    std::vector<SumDiffSymbol> z(det.decisions().size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = kJointSymbols[static_cast<std::size_t>(det.decisions()[i])];
    DecodeResult out;
    out.decoded = inverse_input_transform(z);
    out.final_metric = final_metric;
    return out;
}

// ---------------------------------------------------------------------------
// Joint Viterbi reference in the original coordinates.

DecodeResult detect_ml_reference(const ReceivedPair& received,
                                 const ChannelTarget& target,
                                 const ItiModel& iti) {
    validate_iti(iti);
    const int nu = target.memory();
    const int S = ipow(4, nu);
    if (S > 4096)
        throw std::invalid_argument("ml reference guarded to 4^nu <= 4096");
    const std::size_t n = received.r_a.size();
    if (n == 0 || received.r_b.size() != n)
        throw std::invalid_argument("ml reference needs equal nonempty heads");

    const double mix_ab = iti.epsilon - iti.delta_epsilon;
    const double mix_ba = iti.epsilon + iti.delta_epsilon;
    const auto& h = target.coefficients;

    // Steady-state output tables per (state, input): the state digits are
    // joint-symbol indices, most recent most significant.
    std::vector<double> ya(static_cast<std::size_t>(S) * 4), yb(static_cast<std::size_t>(S) * 4);
    for (int w = 0; w < S; ++w) {
        for (int z = 0; z < 4; ++z) {
            double ca = h[0] * kJointBits[static_cast<std::size_t>(z)][0];
            double cb = h[0] * kJointBits[static_cast<std::size_t>(z)][1];
            int digits = w;
            for (int k = 1; k <= nu; ++k) {
                const int d = (digits / ipow(4, nu - k)) % 4;
                ca += h[static_cast<std::size_t>(k)] * kJointBits[static_cast<std::size_t>(d)][0];
                cb += h[static_cast<std::size_t>(k)] * kJointBits[static_cast<std::size_t>(d)][1];
            }
            ya[static_cast<std::size_t>(w) * 4 + static_cast<std::size_t>(z)] = ca + mix_ab * cb;
            yb[static_cast<std::size_t>(w) * 4 + static_cast<std::size_t>(z)] = mix_ba * ca + cb;
        }
    }

    const int depth = std::max(32, 8 * (nu + 1));
    std::vector<double> metric(static_cast<std::size_t>(S), 0.0), metric_next(static_cast<std::size_t>(S));
    std::vector<std::int16_t> hist_pred(static_cast<std::size_t>(depth + 1) * S);
    std::vector<std::int8_t> hist_input(static_cast<std::size_t>(depth + 1) * S);
    std::vector<int> decisions;
    decisions.reserve(n);

    const int hi = ipow(4, nu - 1);
    long long steps = 0;
    auto best_state = [&]() {
        int cur = 0;
        double lo = kInf;
        for (int s = 0; s < S; ++s)
            if (metric[static_cast<std::size_t>(s)] < lo) {
                lo = metric[static_cast<std::size_t>(s)];
                cur = s;
            }
        return cur;
    };
    double final_metric = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const double ra = received.r_a[i], rb = received.r_b[i];
        const std::size_t slot =
            static_cast<std::size_t>(steps % (depth + 1)) * static_cast<std::size_t>(S);
        std::fill(metric_next.begin(), metric_next.end(), kInf);
        const bool steady = steps >= nu;
        for (int p = 0; p < S; ++p) {
            const double mp = metric[static_cast<std::size_t>(p)];
            for (int z = 0; z < 4; ++z) {
                double va, vb;
                if (steady) {
                    va = ya[static_cast<std::size_t>(p) * 4 + static_cast<std::size_t>(z)];
                    vb = yb[static_cast<std::size_t>(p) * 4 + static_cast<std::size_t>(z)];
                } else {
                    // Warm-up: taps beyond the number of real symbols are
                    // silent (zero initial channel state).
                    double ca = h[0] * kJointBits[static_cast<std::size_t>(z)][0];
                    double cb = h[0] * kJointBits[static_cast<std::size_t>(z)][1];
                    int digits = p;
                    for (int k = 1; k <= nu && k <= static_cast<int>(steps); ++k) {
                        const int d = (digits / ipow(4, nu - k)) % 4;
                        ca += h[static_cast<std::size_t>(k)] * kJointBits[static_cast<std::size_t>(d)][0];
                        cb += h[static_cast<std::size_t>(k)] * kJointBits[static_cast<std::size_t>(d)][1];
                    }
                    va = ca + mix_ab * cb;
                    vb = mix_ba * ca + cb;
                }
                const double da = ra - va, db = rb - vb;
                const double cand = mp + da * da + db * db;
                const int t = z * hi + p / 4;
                if (cand < metric_next[static_cast<std::size_t>(t)]) {
                    metric_next[static_cast<std::size_t>(t)] = cand;
                    hist_pred[slot + static_cast<std::size_t>(t)] = static_cast<std::int16_t>(p);
                    hist_input[slot + static_cast<std::size_t>(t)] = static_cast<std::int8_t>(z);
                }
            }
        }
        metric.swap(metric_next);
        ++steps;
        if (steps > depth) {
            int cur = best_state();
            const long long tgt = steps - 1 - depth;
            for (long long k = steps - 1; k > tgt; --k)
                cur = hist_pred[static_cast<std::size_t>(k % (depth + 1)) * S +
                                static_cast<std::size_t>(cur)];
            decisions.push_back(hist_input[static_cast<std::size_t>(tgt % (depth + 1)) * S +
                                           static_cast<std::size_t>(cur)]);
        }
        if ((steps & 1023) == 0) {
            double lo = kInf;
            for (double m : metric) lo = std::min(lo, m);
            if (lo > 0.0 && lo < kInf)
                for (double& m : metric) m -= lo;
        }
    }

    final_metric = metric[static_cast<std::size_t>(best_state())];
    {
        const long long released = std::max(0LL, steps - depth);
        int cur = best_state();
        std::vector<int> tail;
        for (long long k = steps - 1; k >= released; --k) {
            const std::size_t slot =
                static_cast<std::size_t>(k % (depth + 1)) * static_cast<std::size_t>(S);
            tail.push_back(hist_input[slot + static_cast<std::size_t>(cur)]);
            cur = hist_pred[slot + static_cast<std::size_t>(cur)];
        }
        decisions.insert(decisions.end(), tail.rbegin(), tail.rend());
    }

    DecodeResult out;
    out.decoded.track_a.resize(n);
    out.decoded.track_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.decoded.track_a[i] = kJointBits[static_cast<std::size_t>(decisions[i])][0];
        out.decoded.track_b[i] = kJointBits[static_cast<std::size_t>(decisions[i])][1];
    }
    out.final_metric = final_metric;
    return out;
}

ErrorCount count_errors(const DecodeResult& result, const TrackPair& truth,
                        int guard) {
    const std::size_t n = truth.track_a.size();
    if (result.decoded.track_a.size() != n)
        throw std::invalid_argument("count_errors length mismatch");
    ErrorCount c;
    const std::size_t lo = static_cast<std::size_t>(std::max(0, guard));
    const std::size_t hi = n > lo ? n - lo : 0;
    for (std::size_t i = lo; i < hi; ++i) {
        c.errors_a += result.decoded.track_a[i] != truth.track_a[i];
        c.errors_b += result.decoded.track_b[i] != truth.track_b[i];
        c.counted_bits += 2;
    }
    return c;
}

}  // namespace rsse
