#include "rsse/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rsse {

namespace {

// subset index tables by L4 symbol index, per level
constexpr std::array<int, 4> kIndexL1 = {0, 0, 0, 0};
constexpr std::array<int, 4> kIndexL2 = {0, 1, 1, 0};
constexpr std::array<int, 4> kIndexL3 = {0, 1, 2, 0};
constexpr std::array<int, 4> kIndexL4 = {0, 1, 2, 3};

const std::array<int, 4>& index_table(PartitionLevel level) {
    switch (level) {
        case PartitionLevel::L1: return kIndexL1;
        case PartitionLevel::L2: return kIndexL2;
        case PartitionLevel::L3: return kIndexL3;
        case PartitionLevel::L4: return kIndexL4;
    }
    throw std::invalid_argument("invalid partition level");
}

// Track negation maps z -> -z, i.e. L4 index i -> 3 - i; track swap flips
// the sign of z-, fixing (+/-2, 0) and exchanging (0,+2) <-> (0,-2).
int negate_error(int e) {
    static constexpr std::array<int, 9> kMap = {0, 2, 1, 4, 3, 6, 5, 8, 7};
    return kMap[static_cast<std::size_t>(e)];
}
int swap_error(int e) {
    static constexpr std::array<int, 9> kMap = {0, 1, 2, 4, 3, 7, 8, 5, 6};
    return kMap[static_cast<std::size_t>(e)];
}

}  // namespace

PartitionLevel level_from_subset_count(int j) {
    if (j < 1 || j > 4)
        throw std::invalid_argument("subset count must be in {1,2,3,4}");
    return static_cast<PartitionLevel>(j);
}

double espd(const SumDiffSymbol& z1, const SumDiffSymbol& z2, double epsilon) {
    const double wp = (1.0 + epsilon) * (1.0 + epsilon);
    const double wm = (1.0 - epsilon) * (1.0 - epsilon);
    const double dp = static_cast<double>(z1.z_plus - z2.z_plus);
    const double dm = static_cast<double>(z1.z_minus - z2.z_minus);
    return 0.5 * wp * dp * dp + 0.5 * wm * dm * dm;
}

double level_min_espd(PartitionLevel level, double epsilon) {
    const double d1 = 8.0 * (1.0 + epsilon) * (1.0 + epsilon);
    const double d2 = 8.0 * (1.0 - epsilon) * (1.0 - epsilon);
    const double d3 = 4.0 * (1.0 + epsilon * epsilon);
    switch (level) {
        case PartitionLevel::L1: return std::min(d2, d3);
        case PartitionLevel::L2: return d2;
        case PartitionLevel::L3: return d1;
        case PartitionLevel::L4: return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("invalid partition level");
}

int subset_index(int z_index, PartitionLevel level) {
    if (z_index < 0 || z_index > 3)
        throw std::invalid_argument("symbol index outside the constellation");
    return index_table(level)[static_cast<std::size_t>(z_index)];
}

int subset_index(const SumDiffSymbol& z, PartitionLevel level) {
    const int idx = joint_index(z);
    if (idx < 0)
        throw std::invalid_argument("symbol outside the constellation");
    return subset_index(idx, level);
}

int reindex_subset(int index, PartitionLevel from, PartitionLevel to) {
    if (subset_count(from) < subset_count(to))
        throw std::invalid_argument("reindex_subset needs a refining source level");
    // Pick any L4 member of the source subset and classify it at the target
    // level; well defined because every level refines every coarser one.
    const auto& src = index_table(from);
    for (int z = 0; z < 4; ++z) {
        if (src[static_cast<std::size_t>(z)] == index)
            return index_table(to)[static_cast<std::size_t>(z)];
    }
    throw std::invalid_argument("subset index out of range for source level");
}

const std::vector<int>& intrasubset_errors(PartitionLevel level) {
    // Realizable differences z - z' within one subset, enumerated once.
    static const std::vector<int> kL1 = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    static const std::vector<int> kL2 = {0, 1, 2, 3, 4};
    static const std::vector<int> kL3 = {0, 1, 2};
    static const std::vector<int> kL4 = {0};
    switch (level) {
        case PartitionLevel::L1: return kL1;
        case PartitionLevel::L2: return kL2;
        case PartitionLevel::L3: return kL3;
        case PartitionLevel::L4: return kL4;
    }
    throw std::invalid_argument("invalid partition level");
}

const std::vector<int>& intersubset_errors(PartitionLevel level) {
    static const std::vector<int> kL1 = {};
    static const std::vector<int> kL2 = {5, 6, 7, 8};
    static const std::vector<int> kL3 = {3, 4, 5, 6, 7, 8};
    static const std::vector<int> kL4 = {1, 2, 3, 4, 5, 6, 7, 8};
    switch (level) {
        case PartitionLevel::L1: return kL1;
        case PartitionLevel::L2: return kL2;
        case PartitionLevel::L3: return kL3;
        case PartitionLevel::L4: return kL4;
    }
    throw std::invalid_argument("invalid partition level");
}

bool is_intrasubset(int error_symbol, PartitionLevel level) {
    const auto& set = intrasubset_errors(level);
    return std::find(set.begin(), set.end(), error_symbol) != set.end();
}

int apply_error_symmetry(int error_symbol, ErrorSymmetry s) {
    switch (s) {
        case ErrorSymmetry::kIdentity: return error_symbol;
        case ErrorSymmetry::kNegate: return negate_error(error_symbol);
        case ErrorSymmetry::kSwap: return swap_error(error_symbol);
        case ErrorSymmetry::kNegateSwap: return negate_error(swap_error(error_symbol));
    }
    throw std::invalid_argument("invalid error symmetry");
}

}  // namespace rsse
