#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/alt_checks.hpp"
#include "support/random_worlds.hpp"
#include "zemac/overlap.hpp"

using namespace zemac;
using zemac::testing::random_world;

namespace {

constexpr int kWorlds = 300; // the acceptance suite runs the full 1000+

std::vector<std::vector<VariableName>> groups_for(const World& w) {
    std::vector<std::vector<VariableName>> groups;
    for (const auto& v : w.variables()) groups.push_back({v});
    return groups;
}

} // namespace

TEST_CASE("information symmetry on random worlds") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3 + seed % 2);
        auto a = std::vector<VariableName>{"V1"};
        auto b = std::vector<VariableName>{"V2"};
        CAPTURE(seed);
        CHECK(nonstochastic_info(w, a, b).cells == nonstochastic_info(w, b, a).cells);
    }
}

TEST_CASE("unrelatedness definitions coincide") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3 + seed % 2);
        auto groups = groups_for(w);
        CAPTURE(seed);
        CHECK(is_unrelated(w, groups) ==
              testing::unrelated_by_conditional_ranges(w, groups));
        // two-group variant with a merged tail
        std::vector<std::vector<VariableName>> two{{w.variables().front()}, {}};
        for (std::size_t i = 1; i < w.variables().size(); ++i)
            two[1].push_back(w.variables()[i]);
        CHECK(is_unrelated(w, two) == testing::unrelated_by_conditional_ranges(w, two));
    }
}

TEST_CASE("unrelatedness of a family implies unrelatedness of subfamilies") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3, 3);
        auto groups = groups_for(w);
        CAPTURE(seed);
        if (is_unrelated(w, groups))
            for (std::size_t drop = 0; drop < groups.size(); ++drop) {
                auto sub = groups;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                CHECK(is_unrelated(w, sub));
            }
    }
}

TEST_CASE("markov definitions coincide") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3, 3);
        std::vector<VariableName> l{"V1"}, m{"V2"}, r{"V3"};
        CAPTURE(seed);
        const bool direct = is_markov(w, l, m, r);
        CHECK(direct == is_markov(w, r, m, l));
        CHECK(direct == testing::markov_by_conditional_unrelatedness(w, l, m, r));
    }
}

TEST_CASE("matching partitions have equal cell counts and a bijection") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3 + seed % 2);
        std::vector<VariableName> a{"V1"}, b{"V2"};
        Partition pa = overlap_partition(w, a, b);
        Partition pb = overlap_partition(w, b, a);
        CAPTURE(seed);
        REQUIRE(pa.cell_count() == pb.cell_count());
        // the admissible-pair correspondence is a bijection on labels
        auto ia = w.resolve(a);
        auto ib = w.resolve(b);
        constexpr std::uint32_t kUnset = 0xffffffffu;
        std::vector<std::uint32_t> image(pa.cell_count(), kUnset);
        std::vector<bool> hit(pb.cell_count(), false);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::vector<SymbolId> xa{w.row(i)[ia[0]]};
            std::vector<SymbolId> xb{w.row(i)[ib[0]]};
            auto la = pa.label_of(*pa.ground().index_of(xa));
            auto lb = pb.label_of(*pb.ground().index_of(xb));
            if (image[la] == kUnset) image[la] = lb;
            CHECK(image[la] == lb);
            hit[lb] = true;
        }
        for (bool h : hit) CHECK(h);
    }
}

TEST_CASE("the nc partition has exactly as many cells as the join") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3 + seed % 2);
        std::vector<VariableName> x1{"V1"}, x2{"V2"}, y{"V3"};
        CAPTURE(seed);
        CHECK(nc_partition(w, x1, x2, y).cell_count() ==
              nc_info(w, x1, x2, y).cells);
    }
}

TEST_CASE("join laws") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 4, 3);
        std::vector<VariableName> target{"V4"};
        Partition p = overlap_partition(w, target, {"V1"});
        Partition q = overlap_partition(w, target, {"V2"});
        Partition r = overlap_partition(w, target, {"V3"});
        CAPTURE(seed);
        CHECK(partition_join(p, q) == partition_join(q, p));
        CHECK(partition_join(partition_join(p, q), r) ==
              partition_join(p, partition_join(q, r)));
        CHECK(partition_join(p, p) == p);
        CHECK(partition_join(p, Partition::trivial(p.ground())) == p);
    }
}

TEST_CASE("conditional families cover the marginal range") {
    for (int seed = 0; seed < kWorlds; ++seed) {
        World w = random_world(seed, 3);
        auto fam = conditional_family(w, {"V1"}, {"V2"});
        std::set<SymbolTuple> points;
        for (const auto& e : fam.entries())
            for (std::size_t i = 0; i < e.range.size(); ++i)
                points.insert(e.range.row_tokens(i));
        CAPTURE(seed);
        CHECK(points.size() == marginal_range(w, {"V1"}).size());
    }
}
