#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"
#include "rsse/partition.hpp"
#include "rsse/types.hpp"

using namespace rsse;

TEST_CASE("error symbol table is the canonical index map") {
    // index -> (e+, e-)
    const int ep[9] = {0, 4, -4, 0, 0, 2, -2, 2, -2};
    const int em[9] = {0, 0, 0, 4, -4, 2, -2, -2, 2};
    for (int e = 0; e < kNumErrorSymbols; ++e) {
        CHECK(kErrorPlus[static_cast<std::size_t>(e)] == ep[e]);
        CHECK(kErrorMinus[static_cast<std::size_t>(e)] == em[e]);
    }
}

TEST_CASE("per-track error components are consistent with (e+, e-)") {
    for (int e = 0; e < kNumErrorSymbols; ++e) {
        const int plus = kErrorPlus[static_cast<std::size_t>(e)];
        const int minus = kErrorMinus[static_cast<std::size_t>(e)];
        CHECK(error_track_a(e) * 2 == plus + minus);
        CHECK(error_track_b(e) * 2 == plus - minus);
        CHECK((error_track_a(e) == 0 || error_track_a(e) == 2 ||
               error_track_a(e) == -2));
    }
    // every (e_a, e_b) pair in {-2,0,2}^2 with a unique index
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < kNumErrorSymbols; ++e)
        seen.insert({error_track_a(e), error_track_b(e)});
    CHECK(seen.size() == 9);
}

TEST_CASE("intrasubset error sets match the partition levels") {
    const std::set<int> l1 = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    const std::set<int> l2 = {0, 1, 2, 3, 4};
    const std::set<int> l3 = {0, 1, 2};
    const std::set<int> l4 = {0};
    auto as_set = [](const std::vector<int>& v) {
        return std::set<int>(v.begin(), v.end());
    };
    CHECK(as_set(intrasubset_errors(PartitionLevel::L1)) == l1);
    CHECK(as_set(intrasubset_errors(PartitionLevel::L2)) == l2);
    CHECK(as_set(intrasubset_errors(PartitionLevel::L3)) == l3);
    CHECK(as_set(intrasubset_errors(PartitionLevel::L4)) == l4);
    for (int e = 0; e < kNumErrorSymbols; ++e) {
        CHECK(is_intrasubset(e, PartitionLevel::L2) == (l2.count(e) > 0));
        CHECK(is_intrasubset(e, PartitionLevel::L3) == (l3.count(e) > 0));
    }
}

TEST_CASE("intersubset errors complement the intrasubset sets") {
    for (PartitionLevel level :
         {PartitionLevel::L1, PartitionLevel::L2, PartitionLevel::L3,
          PartitionLevel::L4}) {
        const auto intra = intrasubset_errors(level);
        const auto inter = intersubset_errors(level);
        CHECK(intra.size() + inter.size() == 9u);
        std::set<int> all(intra.begin(), intra.end());
        all.insert(inter.begin(), inter.end());
        CHECK(all.size() == 9u);
    }
}

TEST_CASE("espd matches the three distance classes") {
    // (+2,0) vs (-2,0): De1^2 = 8 (1+eps)^2
    const double eps = 0.2;
    CHECK(espd(SumDiffSymbol{2, 0}, SumDiffSymbol{-2, 0}, eps) ==
          doctest::Approx(8.0 * 1.2 * 1.2));
    // (0,+2) vs (0,-2): De2^2 = 8 (1-eps)^2
    CHECK(espd(SumDiffSymbol{0, 2}, SumDiffSymbol{0, -2}, eps) ==
          doctest::Approx(8.0 * 0.8 * 0.8));
    // (+2,0) vs (0,+2): De3^2 = 4 (1+eps^2)
    CHECK(espd(SumDiffSymbol{2, 0}, SumDiffSymbol{0, 2}, eps) ==
          doctest::Approx(4.0 * (1.0 + eps * eps)));
}

TEST_CASE("per-level minimum intrasubset distances") {
    const double eps = 0.1;
    const double d1 = 8.0 * 1.1 * 1.1;
    const double d2 = 8.0 * 0.9 * 0.9;
    const double d3 = 4.0 * (1.0 + eps * eps);
    CHECK(level_min_espd(PartitionLevel::L1, eps) ==
          doctest::Approx(std::min(d2, d3)));
    CHECK(level_min_espd(PartitionLevel::L2, eps) == doctest::Approx(d2));
    CHECK(level_min_espd(PartitionLevel::L3, eps) == doctest::Approx(d1));
    CHECK(level_min_espd(PartitionLevel::L4, eps) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("the small-interference regime reorders the distance classes") {
    // De3^2 < De2^2 exactly when eps < 2 - sqrt(3)
    const double crossover = 2.0 - std::sqrt(3.0);
    for (double eps : {0.05, 0.2, crossover}) {
        const double d2 = espd(SumDiffSymbol{0, 2}, SumDiffSymbol{0, -2}, eps);
        const double d3 = espd(SumDiffSymbol{2, 0}, SumDiffSymbol{0, 2}, eps);
        if (eps < crossover - 1e-12)
            CHECK(d3 < d2);
        else if (eps > crossover + 1e-12)
            CHECK(d2 < d3);
        else
            CHECK(d2 == doctest::Approx(d3).epsilon(1e-9));
    }
}

TEST_CASE("symmetry maps form the four-element group") {
    auto img = [](ErrorSymmetry sym) {
        std::vector<int> v;
        for (int e = 0; e < kNumErrorSymbols; ++e)
            v.push_back(apply_error_symmetry(e, sym));
        return v;
    };
    const auto neg = img(ErrorSymmetry::kNegate);
    const auto swp = img(ErrorSymmetry::kSwap);
    const auto both = img(ErrorSymmetry::kNegateSwap);
    CHECK(neg == std::vector<int>{0, 2, 1, 4, 3, 6, 5, 8, 7});
    CHECK(swp == std::vector<int>{0, 1, 2, 4, 3, 7, 8, 5, 6});
    for (int e = 0; e < kNumErrorSymbols; ++e) {
        CHECK(apply_error_symmetry(e, ErrorSymmetry::kIdentity) == e);
        // involutions
        CHECK(neg[static_cast<std::size_t>(neg[static_cast<std::size_t>(e)])] == e);
        CHECK(swp[static_cast<std::size_t>(swp[static_cast<std::size_t>(e)])] == e);
        // negate and swap commute, composing to negate-swap
        CHECK(neg[static_cast<std::size_t>(swp[static_cast<std::size_t>(e)])] ==
              both[static_cast<std::size_t>(e)]);
        CHECK(swp[static_cast<std::size_t>(neg[static_cast<std::size_t>(e)])] ==
              both[static_cast<std::size_t>(e)]);
    }
    // negate flips both tracks' error signs; swap exchanges the tracks
    for (int e = 0; e < kNumErrorSymbols; ++e) {
        CHECK(error_track_a(neg[static_cast<std::size_t>(e)]) ==
              -error_track_a(e));
        CHECK(error_track_b(neg[static_cast<std::size_t>(e)]) ==
              -error_track_b(e));
        CHECK(error_track_a(swp[static_cast<std::size_t>(e)]) ==
              error_track_b(e));
        CHECK(error_track_b(swp[static_cast<std::size_t>(e)]) ==
              error_track_a(e));
    }
}
