#include "rsse/errspec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace rsse {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

long long ipow9(int n) {
    long long r = 1;
    while (n-- > 0) r *= 9;
    return r;
}

std::vector<int> least_rotation(const std::vector<int>& p) {
    std::vector<int> best = p;
    std::vector<int> cur = p;
    for (std::size_t k = 1; k < p.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

void check_symbol(int e) {
    if (e < 0 || e >= kNumErrorSymbols) {
        throw std::invalid_argument("error symbol index out of range [0,9)");
    }
}

// Walks `literal` from the all-zero diagram state.  With stop_at_merge the
// walk is continued with zero symbols until the first merging state (the
// truncated event distance); otherwise exactly extra_zeros zero symbols are
// appended (extra_zeros = memory gives the full-convolution distance).
double walk_literal(const ErrorDiagram& d, const std::vector<int>& literal,
                    int extra_zeros, bool stop_at_merge) {
    int state = d.zero_state();
    double dist = 0.0;
    for (int e : literal) {
        check_symbol(e);
        dist += d.edge_output(state, e);
        state = d.successor(state, e);
    }
    if (stop_at_merge) {
        int guard = d.memory();
        while (!d.is_merging(state) && guard-- > 0) {
            dist += d.edge_output(state, 0);
            state = d.successor(state, 0);
        }
    } else {
        for (int i = 0; i < extra_zeros; ++i) {
            dist += d.edge_output(state, 0);
            state = d.successor(state, 0);
        }
    }
    return dist;
}

std::vector<ErrorSegment> map_segments(const std::vector<ErrorSegment>& segs,
                                       ErrorSymmetry s) {
    std::vector<ErrorSegment> out = segs;
    for (auto& seg : out) {
        for (auto& e : seg.symbols) e = apply_error_symmetry(e, s);
    }
    return out;
}

int first_symbol(const std::vector<ErrorSegment>& segs) {
    for (const auto& seg : segs) {
        if (!seg.symbols.empty()) return seg.symbols.front();
    }
    return -1;
}

// Entry-rooted folding: when the literal preceding a cycle marker ends with
// one copy of the pattern, that copy is absorbed into the marker (which then
// stands for >= 1 occurrences).  Otherwise the marker keeps >= 0 semantics.
void fold_cycles(std::vector<ErrorSegment>& segs) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!segs[i].is_cycle) continue;
        auto& pat = segs[i].symbols;
        segs[i].min_occurrences = 0;
        if (i == 0 || segs[i - 1].is_cycle) continue;
        auto& prev = segs[i - 1].symbols;
        if (prev.size() >= pat.size() &&
            std::equal(pat.begin(), pat.end(), prev.end() - static_cast<long>(pat.size()))) {
            prev.erase(prev.end() - static_cast<long>(pat.size()), prev.end());
            segs[i].min_occurrences = 1;
        }
    }
}

struct CanonResult {
    std::vector<ErrorSegment> segs;
    std::string rendered;
    int multiplicity = 1;
};

// Canonical representative under the symmetry group: positive e_a in the
// first symbol, ties broken by the lexicographically least rendering.
CanonResult canonicalize_segments(const std::vector<ErrorSegment>& segs) {
    CanonResult out;
    std::set<std::string> renders;
    bool have = false;
    std::string best_any;
    std::vector<ErrorSegment> best_any_segs;
    for (int si = 0; si < 4; ++si) {
        auto img = map_segments(segs, static_cast<ErrorSymmetry>(si));
        std::string r = render_error_event(img);
        if (si == 0 || r < best_any) {
            best_any = r;
            best_any_segs = img;
        }
        renders.insert(r);
        const int f = first_symbol(img);
        const bool qualifies = f > 0 && error_track_a(f) > 0;
        if (qualifies && (!have || r < out.rendered)) {
            out.rendered = r;
            out.segs = std::move(img);
            have = true;
        }
    }
    if (!have) {  // defensive; every nonzero first symbol has a qualifying image
        out.rendered = best_any;
        out.segs = best_any_segs;
    }
    out.multiplicity = static_cast<int>(renders.size());
    return out;
}

}  // namespace

// ----- ErrorDiagram -------------------------------------------------------

ErrorDiagram::ErrorDiagram(const ChannelTarget& target,
                           const SubsetConfig& config, const ItiModel& iti)
    : nu_(target.memory()) {
    if (config.memory() != nu_) {
        throw std::invalid_argument(
            "subset config length must equal target memory");
    }
    if (nu_ < 1 || nu_ > 5) {
        throw std::invalid_argument(
            "error state diagram is guarded to memory 1..5 (9^nu states)");
    }
    validate_iti(iti);
    num_states_ = static_cast<int>(ipow9(nu_));
    hi_ = static_cast<int>(ipow9(nu_ - 1));
    taps_ = target.int_taps;
    scale_ = target.tap_scale;

    const double eps = iti.epsilon;
    const double deps = iti.delta_epsilon;
    wp_ = (1.0 + eps) * (1.0 + eps);
    wm_ = (1.0 - eps) * (1.0 - eps);
    cp_ = deps / (1.0 + eps);
    cm_ = deps / (eps - 1.0);
    inv_scale_sq_ =
        1.0 / (static_cast<double>(scale_) * static_cast<double>(scale_));

    // Merging states: every window position intrasubset at its level.
    std::array<std::array<char, 9>, 5> ok{};
    for (int pos = 0; pos < nu_; ++pos) {
        for (int e = 0; e < 9; ++e) {
            ok[static_cast<std::size_t>(pos)][static_cast<std::size_t>(e)] =
                is_intrasubset(e, config.level(pos)) ? 1 : 0;
        }
    }
    merging_.assign(static_cast<std::size_t>(num_states_), 0);
    for (int s = 0; s < num_states_; ++s) {
        int v = s;
        char m = 1;
        for (int pos = nu_ - 1; pos >= 0; --pos) {
            const int dgt = v % 9;
            v /= 9;
            if (!ok[static_cast<std::size_t>(pos)][static_cast<std::size_t>(dgt)]) {
                m = 0;
                break;
            }
        }
        merging_[static_cast<std::size_t>(s)] = m;
    }

    // Integer window sums per (state, input).
    sums_p_.assign(static_cast<std::size_t>(num_states_) * 9, 0);
    sums_m_.assign(static_cast<std::size_t>(num_states_) * 9, 0);
    for (int s = 0; s < num_states_; ++s) {
        long long base_p = 0;
        long long base_m = 0;
        int v = s;
        for (int pos = nu_ - 1; pos >= 0; --pos) {
            const int dgt = v % 9;
            v /= 9;
            base_p += taps_[static_cast<std::size_t>(pos + 1)] *
                      kErrorPlus[static_cast<std::size_t>(dgt)];
            base_m += taps_[static_cast<std::size_t>(pos + 1)] *
                      kErrorMinus[static_cast<std::size_t>(dgt)];
        }
        for (int e = 0; e < 9; ++e) {
            const std::size_t idx = static_cast<std::size_t>(s) * 9 +
                                    static_cast<std::size_t>(e);
            sums_p_[idx] = static_cast<std::int32_t>(
                base_p + taps_[0] * kErrorPlus[static_cast<std::size_t>(e)]);
            sums_m_[idx] = static_cast<std::int32_t>(
                base_m + taps_[0] * kErrorMinus[static_cast<std::size_t>(e)]);
        }
    }

    // Zero cycles.  For a fixed state, a zero-output edge needs both integer
    // sums to vanish, which pins (e+, e-) and hence the input uniquely (h_0
    // is nonzero) -- so restricted to non-merging states the zero-edge
    // subgraph is a partial functional graph and its cycles are pairwise
    // disjoint.
    std::vector<int> nxt(static_cast<std::size_t>(num_states_), -1);
    for (int s = 0; s < num_states_; ++s) {
        if (merging_[static_cast<std::size_t>(s)]) continue;
        int count = 0;
        for (int e = 0; e < 9; ++e) {
            const std::size_t idx = static_cast<std::size_t>(s) * 9 +
                                    static_cast<std::size_t>(e);
            if (sums_p_[idx] == 0 && sums_m_[idx] == 0) {
                ++count;
                const int v2 = successor(s, e);
                if (!merging_[static_cast<std::size_t>(v2)]) {
                    nxt[static_cast<std::size_t>(s)] = e;
                }
            }
        }
        if (count > 1) {
            throw std::logic_error(
                "multiple zero out-edges from one error state");
        }
    }
    on_cycle_.assign(static_cast<std::size_t>(num_states_), -1);
    cycle_pos_.assign(static_cast<std::size_t>(num_states_), -1);
    std::vector<char> color(static_cast<std::size_t>(num_states_), 0);
    for (int s0 = 0; s0 < num_states_; ++s0) {
        if (merging_[static_cast<std::size_t>(s0)] ||
            color[static_cast<std::size_t>(s0)] != 0) {
            continue;
        }
        std::vector<int> path;
        int u = s0;
        while (u >= 0 && color[static_cast<std::size_t>(u)] == 0) {
            color[static_cast<std::size_t>(u)] = 1;
            path.push_back(u);
            const int e = nxt[static_cast<std::size_t>(u)];
            u = (e < 0) ? -1 : successor(u, e);
        }
        if (u >= 0 && color[static_cast<std::size_t>(u)] == 1) {
            Cycle c;
            const auto it = std::find(path.begin(), path.end(), u);
            c.states.assign(it, path.end());
            // Root the cycle at its smallest state id for stable output.
            const auto mn = std::min_element(c.states.begin(), c.states.end());
            std::rotate(c.states.begin(), mn, c.states.end());
            for (int st : c.states) {
                c.inputs.push_back(nxt[static_cast<std::size_t>(st)]);
            }
            const int id = static_cast<int>(cycles_.size());
            for (int k = 0; k < static_cast<int>(c.states.size()); ++k) {
                on_cycle_[static_cast<std::size_t>(c.states[static_cast<std::size_t>(k)])] = id;
                cycle_pos_[static_cast<std::size_t>(c.states[static_cast<std::size_t>(k)])] = k;
            }
            cycles_.push_back(std::move(c));
        }
        for (int st : path) color[static_cast<std::size_t>(st)] = 2;
    }
}

int ErrorDiagram::digit(int state, int pos) const {
    if (pos < 0 || pos >= nu_) throw std::out_of_range("digit position");
    long long v = state;
    for (int i = 0; i < nu_ - 1 - pos; ++i) v /= 9;
    return static_cast<int>(v % 9);
}

std::pair<long long, long long> ErrorDiagram::edge_sums(int state, int e) const {
    check_symbol(e);
    const std::size_t idx = static_cast<std::size_t>(state) * 9 +
                            static_cast<std::size_t>(e);
    return {sums_p_[idx], sums_m_[idx]};
}

double ErrorDiagram::edge_output(int state, int e) const {
    const std::size_t idx = static_cast<std::size_t>(state) * 9 +
                            static_cast<std::size_t>(e);
    const double sp = static_cast<double>(sums_p_[idx]);
    const double sm = static_cast<double>(sums_m_[idx]);
    const double u = sp + cp_ * sm;
    const double v = cm_ * sp + sm;
    return 0.5 * inv_scale_sq_ * (wp_ * u * u + wm_ * v * v);
}

// ----- distances ----------------------------------------------------------

double event_distance_ml(const std::vector<int>& literal,
                         const ChannelTarget& target, const ItiModel& iti) {
    const ErrorDiagram d(target, full_config(target.memory()), iti);
    return walk_literal(d, literal, target.memory(), false);
}

double event_distance_truncated(const std::vector<int>& literal,
                                const ChannelTarget& target,
                                const SubsetConfig& config,
                                const ItiModel& iti) {
    const ErrorDiagram d(target, config, iti);
    return walk_literal(d, literal, 0, true);
}

bool is_early_merged(const std::vector<int>& tail, const SubsetConfig& config) {
    if (static_cast<int>(tail.size()) != config.memory()) {
        throw std::invalid_argument("tail length must equal config memory");
    }
    bool nonzero = false;
    for (int k = 0; k < static_cast<int>(tail.size()); ++k) {
        const int e = tail[static_cast<std::size_t>(k)];
        check_symbol(e);
        if (e != 0) nonzero = true;
        if (!is_intrasubset(e, config.level(k))) return false;
    }
    return nonzero;
}

std::vector<std::vector<int>> find_zero_cycles(const ChannelTarget& target,
                                               const SubsetConfig& config) {
    const ErrorDiagram d(target, config, ItiModel{});
    std::vector<std::vector<int>> out;
    out.push_back({0});
    for (const auto& c : d.cycles()) out.push_back(least_rotation(c.inputs));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ----- closed forms -------------------------------------------------------

double dmin_closed_form_d0(double d0_sq, double epsilon, double delta_epsilon) {
    validate_iti(ItiModel{epsilon, delta_epsilon});
    if (!(d0_sq > 0.0)) {
        throw std::invalid_argument("d0^2 must be positive");
    }
    const double cond =
        (epsilon + delta_epsilon) * (epsilon + delta_epsilon) - 4.0 * epsilon + 1.0;
    if (cond >= 0.0) {
        const double em = epsilon - delta_epsilon;
        return (1.0 + em * em) * d0_sq;
    }
    return 2.0 * ((1.0 - epsilon) * (1.0 - epsilon) +
                  delta_epsilon * delta_epsilon) *
           d0_sq;
}

double dmin_closed_form(const std::string& preset, double epsilon,
                        double delta_epsilon) {
    double d0_sq = 0.0;
    if (preset == "dicode") {
        d0_sq = 8.0;
    } else if (preset == "pr2" || preset == "epr4") {
        d0_sq = 16.0;
    } else {
        throw std::invalid_argument("no closed-form minimum distance for target '" +
                                    preset + "'");
    }
    return dmin_closed_form_d0(d0_sq, epsilon, delta_epsilon);
}

double e1_min_distance(int j1, double h0, double epsilon,
                       double delta_epsilon) {
    validate_iti(ItiModel{epsilon, delta_epsilon});
    if (h0 == 0.0) throw std::invalid_argument("h0 must be nonzero");
    double espd_sq = 0.0;
    if (j1 == 3) {
        espd_sq = 8.0 * (1.0 + epsilon) * (1.0 + epsilon);
    } else if (j1 == 2) {
        espd_sq = 8.0 * (1.0 - epsilon) * (1.0 - epsilon);
    } else {
        throw std::invalid_argument(
            "parallel-branch minimum distance requires J_1 in {2,3}");
    }
    return h0 * h0 * (espd_sq + 8.0 * delta_epsilon * delta_epsilon);
}

// ----- search -------------------------------------------------------------

namespace {

struct FEdge {
    std::vector<ErrorSegment> segs;  // literal [, cycle marker, literal ext]
    double dist = 0.0;
    int to_anchor = -1;   // anchor id, or -1 when the edge ends at a merge
    bool early = false;   // meaningful for terminal edges
};

void append_segments(std::vector<ErrorSegment>& dst,
                     const std::vector<ErrorSegment>& add) {
    for (const auto& s : add) {
        if (!s.is_cycle && s.symbols.empty()) continue;
        if (!s.is_cycle && !dst.empty() && !dst.back().is_cycle) {
            dst.back().symbols.insert(dst.back().symbols.end(),
                                      s.symbols.begin(), s.symbols.end());
        } else {
            dst.push_back(s);
        }
    }
}

}  // namespace

DistanceReport search_events(const ChannelTarget& target,
                             const SubsetConfig& config, const ItiModel& iti,
                             double dmax_sq) {
    if (!(dmax_sq > 0.0)) {
        throw std::invalid_argument("search threshold must be positive");
    }
    const ErrorDiagram d(target, config, iti);
    const int nu = d.memory();
    const int cap = 4 * (nu + 2);

    DistanceReport rep;
    rep.threshold = dmax_sq;
    rep.dmin = kInf;
    rep.dmin_early = kInf;

    // Anchors: the all-zero state plus every state on a zero cycle.
    std::vector<int> anchor_states;
    std::vector<int> anchor_id(static_cast<std::size_t>(d.num_states()), -1);
    anchor_states.push_back(d.zero_state());
    anchor_id[static_cast<std::size_t>(d.zero_state())] = 0;
    for (const auto& c : d.cycles()) {
        for (int s : c.states) {
            anchor_id[static_cast<std::size_t>(s)] =
                static_cast<int>(anchor_states.size());
            anchor_states.push_back(s);
        }
    }
    const int num_anchors = static_cast<int>(anchor_states.size());

    // Step 1: fragments from every anchor to the first merge or zero-cycle
    // arrival, pruned by distance and capped in length.
    std::vector<std::vector<FEdge>> fedges(static_cast<std::size_t>(num_anchors));
    long long budget = 80'000'000;
    std::vector<int> syms;

    for (int a = 0; a < num_anchors; ++a) {
        const int s0 = anchor_states[static_cast<std::size_t>(a)];
        int excluded;
        if (a == 0) {
            excluded = 0;  // events start with a nonzero symbol
        } else {
            const auto& cyc = d.cycles()[static_cast<std::size_t>(d.cycle_of(s0))];
            excluded = cyc.inputs[static_cast<std::size_t>(d.cycle_pos(s0))];
        }

        std::function<void(int, double)> extend;
        auto try_edge = [&](int u, int e, double dcur) {
            if (--budget < 0) {
                throw std::runtime_error(
                    "event search exceeded its node budget; lower the threshold");
            }
            const double nd = dcur + d.edge_output(u, e);
            if (nd > dmax_sq + kTol) return;
            const int v = d.successor(u, e);
            syms.push_back(e);
            if (d.is_merging(v)) {
                FEdge fe;
                fe.segs.push_back(ErrorSegment{false, 0, syms});
                fe.dist = nd;
                fe.to_anchor = -1;
                fe.early = (v != d.zero_state());
                fedges[static_cast<std::size_t>(a)].push_back(std::move(fe));
            } else if (anchor_id[static_cast<std::size_t>(v)] >= 0) {
                if (!(nd > 0.0)) {
                    throw std::logic_error("zero-distance inter-anchor fragment");
                }
                const int cid = d.cycle_of(v);
                const auto& cyc = d.cycles()[static_cast<std::size_t>(cid)];
                const int len = static_cast<int>(cyc.states.size());
                const int pv = d.cycle_pos(v);
                std::vector<int> pattern(static_cast<std::size_t>(len));
                for (int k = 0; k < len; ++k) {
                    pattern[static_cast<std::size_t>(k)] =
                        cyc.inputs[static_cast<std::size_t>((pv + k) % len)];
                }
                for (int k = 0; k < len; ++k) {
                    FEdge fe;
                    fe.segs.push_back(ErrorSegment{false, 0, syms});
                    fe.segs.push_back(ErrorSegment{true, 0, pattern});
                    fe.segs.push_back(ErrorSegment{
                        false, 0,
                        std::vector<int>(pattern.begin(), pattern.begin() + k)});
                    fe.dist = nd;
                    fe.to_anchor = anchor_id[static_cast<std::size_t>(
                        cyc.states[static_cast<std::size_t>((pv + k) % len)])];
                    fedges[static_cast<std::size_t>(a)].push_back(std::move(fe));
                }
            } else if (static_cast<int>(syms.size()) < cap) {
                extend(v, nd);
            } else {
                rep.fragment_cap_hit = true;
            }
            syms.pop_back();
        };
        extend = [&](int u, double dcur) {
            for (int e = 0; e < 9; ++e) try_edge(u, e, dcur);
        };
        syms.clear();
        for (int e = 0; e < 9; ++e) {
            if (e == excluded) continue;
            try_edge(s0, e, 0.0);
        }
    }

    // Step 2: assemble events by walking the fragment graph from the all-zero
    // anchor until a merge; fold, canonicalize, deduplicate.
    std::map<std::string, ErrorEvent> found;
    std::function<void(int, double, const std::vector<ErrorSegment>&)> build =
        [&](int a, double dcur, const std::vector<ErrorSegment>& segs) {
            for (const FEdge& fe : fedges[static_cast<std::size_t>(a)]) {
                if (--budget < 0) {
                    throw std::runtime_error(
                        "event search exceeded its node budget; lower the threshold");
                }
                const double nd = dcur + fe.dist;
                if (nd > dmax_sq + kTol) continue;
                std::vector<ErrorSegment> next = segs;
                append_segments(next, fe.segs);
                if (fe.to_anchor < 0) {
                    fold_cycles(next);
                    CanonResult canon = canonicalize_segments(next);
                    auto it = found.find(canon.rendered);
                    if (it == found.end()) {
                        ErrorEvent ev;
                        ev.segments = std::move(canon.segs);
                        ev.distance = nd;
                        ev.early_merge = fe.early;
                        ev.multiplicity = canon.multiplicity;
                        ev.rendered = canon.rendered;
                        found.emplace(ev.rendered, std::move(ev));
                    } else if (nd < it->second.distance) {
                        // On the asymmetric channel the track-swap image of a
                        // walk shares the canonical rendering but not the
                        // distance; the class is reported at its minimum.
                        it->second.distance = nd;
                    }
                } else {
                    build(fe.to_anchor, nd, next);
                }
            }
        };
    build(0, 0.0, {});

    rep.events.reserve(found.size());
    for (auto& [render, ev] : found) {
        (void)render;
        rep.dmin = std::min(rep.dmin, ev.distance);
        if (ev.early_merge) rep.dmin_early = std::min(rep.dmin_early, ev.distance);
        rep.events.push_back(std::move(ev));
    }
    std::sort(rep.events.begin(), rep.events.end(),
              [](const ErrorEvent& x, const ErrorEvent& y) {
                  if (x.distance != y.distance) return x.distance < y.distance;
                  return x.rendered < y.rendered;
              });
    return rep;
}

double dmin_generic(const ChannelTarget& target, const ItiModel& iti) {
    // Attained upper bound: the best single-error-symbol event.
    double ub = kInf;
    for (int e = 1; e < 9; ++e) {
        ub = std::min(ub, event_distance_ml({e}, target, iti));
    }
    const DistanceReport rep =
        search_events(target, full_config(target.memory()), iti, ub + 1e-6);
    return rep.dmin;
}

double default_search_threshold(const ChannelTarget& target,
                                const ItiModel& iti) {
    if (target.name == "dicode" || target.name == "pr2" ||
        target.name == "epr4") {
        return 1.3 * dmin_closed_form(target.name, iti.epsilon,
                                      iti.delta_epsilon);
    }
    return 1.3 * dmin_generic(target, iti);
}

namespace {

// Exact minimum truncated distance over early-merged events, by Dijkstra on
// the error diagram (edge outputs are nonnegative, so the first settled
// early-merging state is optimal).  Walks run from the all-zero state with a
// nonzero first symbol to their first merging state; interior states are
// non-merging by construction.  Returns +inf when no early merge is
// reachable (full configurations).
double early_min_distance(const ChannelTarget& target,
                          const SubsetConfig& config, const ItiModel& iti) {
    const ErrorDiagram d(target, config, iti);
    const int S = d.num_states();
    std::vector<double> dist(static_cast<std::size_t>(S), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int e = 1; e < 9; ++e) {
        const int v = d.successor(d.zero_state(), e);
        const double w = d.edge_output(d.zero_state(), e);
        if (w < dist[static_cast<std::size_t>(v)]) {
            dist[static_cast<std::size_t>(v)] = w;
            pq.push({w, v});
        }
    }
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[static_cast<std::size_t>(u)]) continue;
        if (d.is_merging(u)) {
            if (u != d.zero_state()) return du;  // first early merge settled
            continue;  // normal merge ends the walk without an early event
        }
        for (int e = 0; e < 9; ++e) {
            const int v = d.successor(u, e);
            const double nd = du + d.edge_output(u, e);
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                pq.push({nd, v});
            }
        }
    }
    return kInf;
}

}  // namespace

DominantReport dominant_early_events(const ChannelTarget& target,
                                     const SubsetConfig& config,
                                     const ItiModel& iti) {
    DominantReport out;
    if (target.name == "dicode" || target.name == "pr2" ||
        target.name == "epr4") {
        out.dmin_ml =
            dmin_closed_form(target.name, iti.epsilon, iti.delta_epsilon);
    } else {
        out.dmin_ml = dmin_generic(target, iti);
    }

    // The enumeration threshold hugs the larger of the two minima so the
    // walk count stays small even when the early minimum sits far above
    // the sequence minimum.
    const double de = early_min_distance(target, config, iti);
    const double threshold =
        std::max(out.dmin_ml, de == kInf ? 0.0 : de) + 1e-6;
    const DistanceReport rep = search_events(target, config, iti, threshold);
    out.dmin_early = rep.dmin_early;
    for (const ErrorEvent& ev : rep.events) {
        if (!ev.early_merge) continue;
        if (out.dmin_early >= out.dmin_ml - kTol) {
            if (ev.distance <= out.dmin_early + 1e-6) out.listed.push_back(ev);
        } else {
            if (ev.distance <= out.dmin_ml + 1e-6) out.listed.push_back(ev);
        }
    }
    return out;
}

// ----- helpers ------------------------------------------------------------

std::vector<int> expand_event(const ErrorEvent& event, int occurrences) {
    std::vector<int> out;
    for (const auto& seg : event.segments) {
        if (!seg.is_cycle) {
            out.insert(out.end(), seg.symbols.begin(), seg.symbols.end());
            continue;
        }
        if (occurrences < seg.min_occurrences) {
            throw std::invalid_argument(
                "occurrence count below the marker's minimum");
        }
        for (int k = 0; k < occurrences; ++k) {
            out.insert(out.end(), seg.symbols.begin(), seg.symbols.end());
        }
    }
    return out;
}

std::vector<int> canonical_literal(const std::vector<int>& literal) {
    std::vector<int> best;
    bool have = false;
    std::vector<int> best_any;
    for (int si = 0; si < 4; ++si) {
        std::vector<int> img = literal;
        for (auto& e : img) e = apply_error_symmetry(e, static_cast<ErrorSymmetry>(si));
        if (si == 0 || img < best_any) best_any = img;
        const int f = img.empty() ? -1 : img.front();
        const bool qualifies = f > 0 && error_track_a(f) > 0;
        if (qualifies && (!have || img < best)) {
            best = std::move(img);
            have = true;
        }
    }
    return have ? best : best_any;
}

std::string render_error_event(const std::vector<ErrorSegment>& segments) {
    std::string out = "[";
    bool first = true;
    for (const auto& seg : segments) {
        if (seg.symbols.empty() && !seg.is_cycle) continue;
        if (!first) out += ' ';
        first = false;
        if (seg.is_cycle) {
            out += '(';
            for (std::size_t i = 0; i < seg.symbols.size(); ++i) {
                if (i) out += ' ';
                out += static_cast<char>('0' + seg.symbols[i]);
            }
            out += ")^inf";
        } else {
            for (std::size_t i = 0; i < seg.symbols.size(); ++i) {
                if (i) out += ' ';
                out += static_cast<char>('0' + seg.symbols[i]);
            }
        }
    }
    out += ']';
    return out;
}

}  // namespace rsse
