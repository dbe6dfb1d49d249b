#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsse/partition.hpp"
#include "rsse/wssjd.hpp"

namespace rsse::oracle {

namespace {

struct BruteState {
    const std::vector<double>* ra;
    const std::vector<double>* rb;
    const std::vector<double>* h;
    double cab, cba;  // cross gains: eps -/+ deps
    int n, nu;
    std::vector<int> xa, xb;  // current path, +/-1
    double best;
    int ties;
    std::vector<int> best_xa, best_xb;
};

void brute_dfs(BruteState& st, int k, double metric) {
    if (metric > st.best + 1e-12) return;
    if (k == st.n) {
        if (metric < st.best - 1e-12) {
            st.best = metric;
            st.ties = 1;
            st.best_xa = st.xa;
            st.best_xb = st.xb;
        } else {
            ++st.ties;  // within 1e-12 of the minimum
        }
        return;
    }
    for (int j = 0; j < 4; ++j) {
        st.xa[static_cast<std::size_t>(k)] = kJointBits[static_cast<std::size_t>(j)][0];
        st.xb[static_cast<std::size_t>(k)] = kJointBits[static_cast<std::size_t>(j)][1];
        double sa = 0.0, sb = 0.0;  // per-track ISI outputs at time k
        for (int i = 0; i <= st.nu && i <= k; ++i) {
            sa += (*st.h)[static_cast<std::size_t>(i)] *
                  st.xa[static_cast<std::size_t>(k - i)];
            sb += (*st.h)[static_cast<std::size_t>(i)] *
                  st.xb[static_cast<std::size_t>(k - i)];
        }
        const double ya = sa + st.cab * sb;
        const double yb = st.cba * sa + sb;
        const double da = (*st.ra)[static_cast<std::size_t>(k)] - ya;
        const double db = (*st.rb)[static_cast<std::size_t>(k)] - yb;
        brute_dfs(st, k + 1, metric + da * da + db * db);
    }
}

}  // namespace

BruteDecode brute_force_decode(const ReceivedPair& r,
                               const ChannelTarget& target,
                               const ItiModel& iti) {
    const int n = static_cast<int>(r.r_a.size());
    if (n < 1 || n > 14)
        throw std::invalid_argument("brute_force_decode limited to 1..14 steps");
    BruteState st;
    st.ra = &r.r_a;
    st.rb = &r.r_b;
    st.h = &target.coefficients;
    st.cab = iti.epsilon - iti.delta_epsilon;
    st.cba = iti.epsilon + iti.delta_epsilon;
    st.n = n;
    st.nu = target.memory();
    st.xa.assign(static_cast<std::size_t>(n), 1);
    st.xb.assign(static_cast<std::size_t>(n), 1);
    st.best = std::numeric_limits<double>::infinity();
    st.ties = 0;
    brute_dfs(st, 0, 0.0);
    BruteDecode out;
    out.decoded.track_a = st.best_xa;
    out.decoded.track_b = st.best_xb;
    out.metric = st.best;
    out.ties = st.ties;
    return out;
}

double pair_distance(const std::vector<int>& literal, int steps,
                     const ChannelTarget& target, const ItiModel& iti) {
    const int len = static_cast<int>(literal.size());
    const int total = std::max(steps, len) + target.memory() + 1;
    TrackPair x, xp;
    for (int k = 0; k < total; ++k) {
        int ea = 0, eb = 0;
        if (k < len) {
            const int e = literal[static_cast<std::size_t>(k)];
            ea = error_track_a(e);
            eb = error_track_b(e);
        }
        const int xa = ea >= 0 ? 1 : -1;
        const int xb = eb >= 0 ? 1 : -1;
        x.track_a.push_back(xa);
        x.track_b.push_back(xb);
        xp.track_a.push_back(xa - ea);
        xp.track_b.push_back(xb - eb);
    }
    const ReceivedPair r1 = transmit(x, target, iti, 0.0, 1);
    const ReceivedPair r2 = transmit(xp, target, iti, 0.0, 1);
    const TransformedReceived t1 = output_transform(r1, iti);
    const TransformedReceived t2 = output_transform(r2, iti);
    const double wp = (1.0 + iti.epsilon) * (1.0 + iti.epsilon) / 2.0;
    const double wm = (1.0 - iti.epsilon) * (1.0 - iti.epsilon) / 2.0;
    double d = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double dp = t1.r_plus[static_cast<std::size_t>(k)] -
                          t2.r_plus[static_cast<std::size_t>(k)];
        const double dm = t1.r_minus[static_cast<std::size_t>(k)] -
                          t2.r_minus[static_cast<std::size_t>(k)];
        d += wp * dp * dp + wm * dm * dm;
    }
    return d;
}

namespace {

bool window_merged(const std::vector<int>& window, const SubsetConfig& config) {
    // window[0] = most recent symbol; merged iff intrasubset at every depth.
    for (int k = 0; k < config.memory(); ++k)
        if (!is_intrasubset(window[static_cast<std::size_t>(k)], config.level(k)))
            return false;
    return true;
}

void enum_dfs(const ChannelTarget& target, const SubsetConfig& config,
              const ItiModel& iti, int max_len, std::vector<int>& literal,
              std::vector<int>& window,
              std::map<std::vector<int>, double>& out) {
    if (!literal.empty() && window_merged(window, config)) {
        out[literal] = pair_distance(literal, static_cast<int>(literal.size()),
                                     target, iti);
        return;  // events end at the first merging window
    }
    if (static_cast<int>(literal.size()) == max_len) return;
    const int first = literal.empty() ? 1 : 0;  // events start with a nonzero
    for (int e = first; e < kNumErrorSymbols; ++e) {
        literal.push_back(e);
        std::vector<int> next(window.size());
        next[0] = e;
        for (std::size_t i = 1; i < window.size(); ++i) next[i] = window[i - 1];
        std::vector<int> saved = window;
        window = next;
        enum_dfs(target, config, iti, max_len, literal, window, out);
        window = saved;
        literal.pop_back();
    }
}

}  // namespace

std::map<std::vector<int>, double> enumerate_events(
    const ChannelTarget& target, const SubsetConfig& config,
    const ItiModel& iti, int max_len) {
    std::map<std::vector<int>, double> out;
    std::vector<int> literal;
    std::vector<int> window(static_cast<std::size_t>(config.memory()), 0);
    enum_dfs(target, config, iti, max_len, literal, window, out);
    return out;
}

}  // namespace rsse::oracle
