#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/cv_enum.hpp"
#include "support/random_worlds.hpp"
#include "zemac/overlap.hpp"

using namespace zemac;
using namespace zemac::testing;

namespace {
constexpr int kWorlds = 150; // the acceptance suite runs the larger sweep
}

TEST_CASE("every brute-force cv factors through the maximal cv") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = seed % 2 ? random_block_world(seed, 2, 2, 2, 5)
                           : random_world(seed, 2, 4, 14);
        std::vector<VariableName> a{"V1"}, b{"V2"};
        CommonVariable maximal = maximal_cv(w, a, b);
        CAPTURE(seed);
        for (const auto& cv : enumerate_cvs(w, a, b)) {
            auto h = factor_through(maximal, cv);
            CHECK(h.has_value());
        }
        // the maximal cv is itself one of the enumerated cvs
        bool found = false;
        for (const auto& cv : enumerate_cvs(w, a, b))
            if (cv.label_count == maximal.label_count && cv.f == maximal.f) found = true;
        CHECK(found);
    }
}

TEST_CASE("no cv exceeds the maximal label count") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed + 5000, 2, 4, 14);
        std::vector<VariableName> a{"V1"}, b{"V2"};
        CommonVariable maximal = maximal_cv(w, a, b);
        CAPTURE(seed);
        for (const auto& cv : enumerate_cvs(w, a, b))
            CHECK(cv.label_count <= maximal.label_count);
    }
}

TEST_CASE("every NC-form cv factors through the NC maximal cv") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = seed % 2 ? random_block_world(seed, 3, 2, 2, 4)
                           : random_world(seed, 3, 3, 12);
        std::vector<VariableName> x1{"V1"}, x2{"V2"}, y{"V3"};
        NCCommonVariable maximal = nc_maximal_cv(w, x1, x2, y);
        CAPTURE(seed);
        for (const auto& cv : enumerate_nc_cvs(w, x1, x2, y))
            CHECK(nc_factors_through(w, x1, x2, y, maximal, cv));
    }
}

TEST_CASE("conditional information is the best unrelated-cv range") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3, 3, 10);
        // keep [[W]] small so the partition enumeration stays tiny
        if (marginal_range(w, {"V3"}).size() > 2) continue;
        std::vector<VariableName> x{"V1"}, y{"V2"}, wv{"V3"};
        CAPTURE(seed);
        CHECK(max_w_unrelated_cv_cells(w, x, y, wv) ==
              conditional_info(w, x, y, wv).cells);
    }
}
