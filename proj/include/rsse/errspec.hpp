// Error-event distance spectrum machinery: the error state diagram over the
// 9-symbol error alphabet, merging states and the early-merging condition,
// zero-cycle detection, closed-form minimum distances, and the search for
// dominant closed error events (plain depth-first when the diagram has no
// zero cycles, two-step fragment-graph search otherwise).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsse/channel.hpp"
#include "rsse/partition.hpp"
#include "rsse/trellis.hpp"

namespace rsse {

// One piece of an error event: either a literal run of error symbols or a
// zero-cycle marker.  A marker's pattern repeats `min_occurrences` or more
// times in an instance (each repetition beyond the walk adds zero distance).
// After entry-rooted folding, markers normally carry min_occurrences = 1.
struct ErrorSegment {
    bool is_cycle = false;
    int min_occurrences = 0;  // meaningful for cycle markers only
    std::vector<int> symbols;
};

struct ErrorEvent {
    std::vector<ErrorSegment> segments;  // canonical representative
    double distance = 0.0;               // truncated distance of the event
    bool early_merge = false;            // ends at a nonzero merging state
    int multiplicity = 1;                // distinct symmetry images (1..4)
    std::string rendered;                // canonical text, e.g. "[(5 0)^inf 1 0]"
};

struct DistanceReport {
    double threshold = 0.0;              // d_max^2 the search ran with
    double dmin = 0.0;                   // min distance over found events
    double dmin_early = 0.0;             // min over early-merged events (inf if none)
    std::vector<ErrorEvent> events;      // nondecreasing distance, deduplicated
    bool fragment_cap_hit = false;       // a capped fragment stayed below threshold
};

// ----- error state diagram ------------------------------------------------

// States are nu-tuples of error-symbol indices, most recent first, packed
// base-9 with the most recent digit most significant.  Edge (u, e) has the
// full window (e, u...) and output
//   (1+eps)^2/2 (S+ + c+ S-)^2 + (1-eps)^2/2 (c- S+ + S-)^2,
// where S+- are the tap-weighted window sums of e+- and
// c+ = deps/(1+eps), c- = deps/(eps-1) (zero for the symmetric channel).
// Zero tests are integer-exact: the output vanishes iff both integer sums
// vanish.
class ErrorDiagram {
  public:
    ErrorDiagram(const ChannelTarget& target, const SubsetConfig& config,
                 const ItiModel& iti);

    int memory() const { return nu_; }
    int num_states() const { return num_states_; }
    int zero_state() const { return 0; }

    int successor(int state, int e) const {
        return e * hi_ + state / 9;
    }
    int digit(int state, int pos) const;  // pos 0 = most recent

    bool is_merging(int state) const { return merging_[static_cast<std::size_t>(state)]; }

    // Integer window sums (S+, S-) in tap_scale units for edge (state, e).
    std::pair<long long, long long> edge_sums(int state, int e) const;
    double edge_output(int state, int e) const;

    // Zero cycles avoiding merging states, pairwise disjoint (structural:
    // each state has at most one zero out-edge).  states[i] --inputs[i]-->
    // states[(i+1) % L].  The trivial all-zero self-loop is not listed here.
    struct Cycle {
        std::vector<int> states;
        std::vector<int> inputs;
    };
    const std::vector<Cycle>& cycles() const { return cycles_; }
    int cycle_of(int state) const { return on_cycle_[static_cast<std::size_t>(state)]; }
    int cycle_pos(int state) const { return cycle_pos_[static_cast<std::size_t>(state)]; }

  private:
    int nu_;
    int num_states_;
    int hi_;  // 9^(nu-1)
    std::vector<long long> taps_;  // integer taps
    long long scale_;
    double wp_, wm_, cp_, cm_, inv_scale_sq_;
    std::vector<char> merging_;
    std::vector<std::int32_t> sums_p_, sums_m_;  // per (state, e)
    std::vector<Cycle> cycles_;
    std::vector<int> on_cycle_, cycle_pos_;
};

// ----- distances ----------------------------------------------------------

// Distance parameter of a literal error sequence with the tail run to
// completion (the full-convolution form: the walk of `literal` plus nu
// trailing zero symbols).
double event_distance_ml(const std::vector<int>& literal,
                         const ChannelTarget& target, const ItiModel& iti);

// Truncated distance under a config: the walk of `literal` continued with
// zero symbols until the first merging state of the config is reached.
// Always <= event_distance_ml of the same literal.
double event_distance_truncated(const std::vector<int>& literal,
                                const ChannelTarget& target,
                                const SubsetConfig& config,
                                const ItiModel& iti);

// Early-merging test for a nu-symbol tail (index 0 = most recent): true iff
// the tail is not all zero and tail[k] is intrasubset at Omega(k+1) for all
// positions.
bool is_early_merged(const std::vector<int>& tail, const SubsetConfig& config);

// Zero-cycle input patterns for a target and config, each normalized to its
// lexicographically least rotation, sorted; always includes the trivial {0}.
std::vector<std::vector<int>> find_zero_cycles(const ChannelTarget& target,
                                               const SubsetConfig& config);

// Closed-form ML minimum distance.  d0_sq is the single-track minimum
// squared distance of the target (8 for dicode, 16 for pr2/epr4):
//   (eps+deps)^2 - 4 eps + 1 >= 0:  (1 + (eps-deps)^2) d0^2
//   otherwise:                      2 ((1-eps)^2 + deps^2) d0^2
// The symmetric special case reduces to the familiar two-branch forms with
// crossover at eps = 2 - sqrt(3).
double dmin_closed_form_d0(double d0_sq, double epsilon, double delta_epsilon);
double dmin_closed_form(const std::string& preset, double epsilon,
                        double delta_epsilon);

// Minimum distance of parallel-branch (intrasubset, single-step) errors for
// J_1 in {2, 3}:  h0^2 D1^2 for J_1 = 3, h0^2 D2^2 for J_1 = 2, plus
// 8 deps^2 h0^2 on the asymmetric channel.  J_1 in {1, 4} rejected.
double e1_min_distance(int j1, double h0, double epsilon,
                       double delta_epsilon);

// ----- search -------------------------------------------------------------

// All closed error events (first symbol nonzero, no early full-window merge,
// ending at the first merging state) with truncated distance <= dmax_sq,
// canonicalized under the 4-element symmetry group and deduplicated; events
// threading zero cycles are reported as families with cycle markers.
// Guarded to nu <= 5.
DistanceReport search_events(const ChannelTarget& target,
                             const SubsetConfig& config, const ItiModel& iti,
                             double dmax_sq);

// Minimum distance by searching the full configuration [4,...,4]; the
// threshold is the attained bound from single-error-symbol events, so the
// search is always nonempty.  Agrees with dmin_closed_form on the presets.
double dmin_generic(const ChannelTarget& target, const ItiModel& iti);

// Default search threshold: 1.3 x the closed-form ML minimum distance for
// the presets, 1.3 x dmin_generic otherwise.
double default_search_threshold(const ChannelTarget& target,
                                const ItiModel& iti);

// Dominant early-merged events as the comparison tables present them: if
// dmin over early events >= the ML minimum distance, only events achieving
// that early minimum are listed; otherwise all early events at or below the
// ML minimum.  The early minimum is found by adaptive threshold expansion.
struct DominantReport {
    double dmin_ml = 0.0;     // ML (closed-form / generic) minimum distance
    double dmin_early = 0.0;  // minimum over early-merged events
    std::vector<ErrorEvent> listed;
};
DominantReport dominant_early_events(const ChannelTarget& target,
                                     const SubsetConfig& config,
                                     const ItiModel& iti);

// ----- helpers for instances and rendering --------------------------------

// Replaces every cycle marker with `occurrences` repetitions of its pattern
// (occurrences >= max min_occurrences over markers).
std::vector<int> expand_event(const ErrorEvent& event, int occurrences);

// Canonical form of a literal error sequence under the symmetry group:
// the image whose first symbol has positive e_a, ties broken by smallest
// rendering.  Used for instance-based event comparisons.
std::vector<int> canonical_literal(const std::vector<int>& literal);

std::string render_error_event(const std::vector<ErrorSegment>& segments);

}  // namespace rsse
