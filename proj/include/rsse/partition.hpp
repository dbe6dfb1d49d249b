// Set-partition tree for the 4-point sum/difference constellation, the
// effective symbol pair distance (ESPD), the 9-symbol error alphabet, and
// the intrasubset / intersubset error classification per level.
//
// Levels, coarse to fine:
//   L1: {all four symbols}
//   L2: {(+2,0),(-2,0)} = 0, {(0,+2),(0,-2)} = 1
//   L3: {(+2,0),(-2,0)} = 0, {(0,+2)} = 1, {(0,-2)} = 2
//   L4: (+2,0) = 0, (0,+2) = 1, (0,-2) = 2, (-2,0) = 3   (singletons)
// Each level refines the one above it, and the L4 indices refine the L3
// indices, which keeps subset reindexing well defined.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rsse/types.hpp"

namespace rsse {

// Partition level; the numeric value is the subset count J of that level.
enum class PartitionLevel : int { L1 = 1, L2 = 2, L3 = 3, L4 = 4 };

inline constexpr int subset_count(PartitionLevel level) {
    return static_cast<int>(level);
}

// Subset count J in {1,2,3,4} -> level (4 -> L4 ... 1 -> L1).
PartitionLevel level_from_subset_count(int j);

// Effective symbol pair distance
//   ((1+eps)^2/2) (z1+ - z2+)^2 + ((1-eps)^2/2) (z1- - z2-)^2.
// The three distinct nonzero values on the constellation are
//   D1^2 = 8(1+eps)^2   (antipodal (+2,0) vs (-2,0))
//   D2^2 = 8(1-eps)^2   (antipodal (0,+2) vs (0,-2))
//   D3^2 = 4(1+eps^2)   (any mixed pair)
double espd(const SumDiffSymbol& z1, const SumDiffSymbol& z2, double epsilon);

// Minimum intrasubset ESPD of a level: L1 -> min{D2^2, D3^2}, L2 -> D2^2,
// L3 -> D1^2, L4 -> +infinity (no intrasubset pair).
double level_min_espd(PartitionLevel level, double epsilon);

// Subset index of a constellation symbol at a level, in [0, J), under the
// fixed conventions above.  `z_index` variants take the L4 (canonical
// joint) index 0..3 directly.
int subset_index(const SumDiffSymbol& z, PartitionLevel level);
int subset_index(int z_index, PartitionLevel level);

// Maps a subset index at a finer level to the index of the containing
// subset at a coarser (or equal) level.  Requires `from` to refine `to`.
int reindex_subset(int index, PartitionLevel from, PartitionLevel to);

// ----- error symbols ------------------------------------------------------

// The 9 possible per-step error symbols e = z - z' between two constellation
// symbols, indexed 0..8.  Coordinates (e+, e-), and the per-track view
// (e_a, e_b) = ((e+ + e-)/2, (e+ - e-)/2):
//   0 -> ( 0, 0)      3 -> (0, 4)       6 -> (-2,-2)
//   1 -> ( 4, 0)      4 -> (0,-4)       7 -> ( 2,-2)
//   2 -> (-4, 0)      5 -> (2, 2)       8 -> (-2, 2)
inline constexpr int kNumErrorSymbols = 9;
inline constexpr std::array<int, 9> kErrorPlus = {0, 4, -4, 0, 0, 2, -2, 2, -2};
inline constexpr std::array<int, 9> kErrorMinus = {0, 0, 0, 4, -4, 2, -2, -2, 2};

inline constexpr int error_track_a(int e) { return (kErrorPlus[static_cast<std::size_t>(e)] + kErrorMinus[static_cast<std::size_t>(e)]) / 2; }
inline constexpr int error_track_b(int e) { return (kErrorPlus[static_cast<std::size_t>(e)] - kErrorMinus[static_cast<std::size_t>(e)]) / 2; }

// Intrasubset error symbols E_a(level): values e realizable as z - z' with
// z, z' in the same subset of the level.  Complement (minus nothing) is the
// intersubset set E_b(level); the two are disjoint at every level.
const std::vector<int>& intrasubset_errors(PartitionLevel level);
const std::vector<int>& intersubset_errors(PartitionLevel level);
bool is_intrasubset(int error_symbol, PartitionLevel level);

// ----- symmetries ---------------------------------------------------------

// The error alphabet carries a 4-element symmetry group generated by track
// negation (x -> -x on both tracks) and track swap (a <-> b).  All four
// images of an error sequence have identical distances and identical
// merging behavior; the search reports one canonical representative and the
// image count as multiplicity.
enum class ErrorSymmetry : int { kIdentity = 0, kNegate = 1, kSwap = 2, kNegateSwap = 3 };

int apply_error_symmetry(int error_symbol, ErrorSymmetry s);

}  // namespace rsse
