// Subset trellis construction.  A configuration J = [J_1..J_nu] assigns a
// partition level to each memory position (4 -> L4 singletons ... 1 -> L1);
// a subset state is the vector of subset indices of the last nu symbols,
// most recent first.  [4,...,4] reproduces the full (ML) trellis; smaller
// J_1 introduces parallel branches that the detector resolves by
// pre-selection.
#pragma once

#include <string>
#include <vector>

#include "rsse/channel.hpp"
#include "rsse/partition.hpp"
#include "rsse/types.hpp"

namespace rsse {

// Validated configuration vector.  Throws std::invalid_argument for an
// empty vector, entries outside {1,2,3,4}, or a non-monotone (increasing)
// sequence.
struct SubsetConfig {
    std::vector<int> j;

    explicit SubsetConfig(std::vector<int> entries);
    int memory() const { return static_cast<int>(j.size()); }
    PartitionLevel level(int k) const;  // Omega(k+1) for k in [0, nu)
    bool is_full() const;               // [4,4,...,4]
    std::string label() const;          // e.g. "[4,2]" or "ml"
};

// Parses "4,2" / "4 2" / "ml:nu" style is not accepted here; this is the
// plain comma/space separated digit list ("4,2,2").
SubsetConfig parse_config(const std::string& text);

// The full-trellis configuration [4,...,4] for a given memory.
SubsetConfig full_config(int nu);

class SubsetTrellis {
  public:
    SubsetTrellis(SubsetConfig config, ChannelTarget target);

    const SubsetConfig& config() const { return config_; }
    const ChannelTarget& target() const { return target_; }
    int memory() const { return config_.memory(); }
    int num_states() const { return num_states_; }

    // Mixed-radix state numbering, digit a(1) (most recent position) most
    // significant.
    int encode_state(const std::vector<int>& digits) const;
    std::vector<int> decode_state(int state) const;

    // Successor state under an input symbol (canonical L4 index 0..3):
    // [subset_index(z, Omega(1)), reindex(a(1) -> Omega(2)), ...].
    int successor(int state, int z_index) const {
        return successors_[static_cast<std::size_t>(state) * 4 +
                           static_cast<std::size_t>(z_index)];
    }

    // Input groups sharing one successor from any state (the grouping is
    // state-independent: inputs share a successor iff they share
    // subset_index at Omega(1)).  Groups are ordered by subset index;
    // members ascending in canonical input order.
    const std::vector<std::vector<int>>& input_groups() const {
        return input_groups_;
    }

    // Largest parallel-group size (1 when J_1 = 4).
    int max_parallel() const;

  private:
    SubsetConfig config_;
    ChannelTarget target_;
    int num_states_;
    std::vector<int> radix_weights_;  // place values for mixed-radix encode
    std::vector<int> successors_;     // [state * 4 + z] -> state
    std::vector<std::vector<int>> input_groups_;
};

}  // namespace rsse
