#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zemac/mac_model.hpp"
#include "zemac/overlap.hpp"
#include "zemac/zec_codec.hpp"

namespace zemac {

using MuTriple = std::array<std::uint64_t, 3>;

struct RegionBounds {
    std::optional<std::uint64_t> max_u;        // default: |X1^n| * |X2^n|
    std::optional<std::uint64_t> max_set_size; // default: max(|X1^n|, |X2^n|)
    std::uint64_t census_budget = 5'000'000;
    std::uint64_t world_cap = kDefaultWorldCap;
    unsigned threads = 1;
};

/// The exact message-count box a cooperation structure achieves:
/// (cells of [[U|Y]]*, 2^I*[X1;Y|U], 2^I*[X2;Y|U]) as integers.
struct RateCuboid {
    MuTriple mu{};
    CooperationStructure source;
};

struct RateRegion {
    std::uint32_t n = 1;
    std::string strategy;          // "exhaustive" or "code-shaped"
    std::set<MuTriple> points;     // downward-closed achievable triples
    std::vector<MuTriple> maximal; // the antichain, ascending
    std::map<MuTriple, CooperationStructure> witnesses; // one per maximal point
};

/// Builds the structure world, asserts both Markov chains, and reads the
/// three cell counts off the overlap machinery.
RateCuboid rate_cuboid(const Channel& ch, const CooperationStructure& s,
                       std::uint64_t world_cap = kDefaultWorldCap);

/// Number of families the exhaustive enumeration would visit; saturates at
/// cap + 1.
std::uint64_t structure_census(const Channel& ch, std::uint32_t n,
                               const RegionBounds& bounds);

/// Visits every family of at most max_u distinct (A_u, B_u) pairs of
/// nonempty bounded subsets, canonically deduplicated and ordered. Refuses
/// when the census exceeds the budget.
void enumerate_structures(const Channel& ch, std::uint32_t n, const RegionBounds& bounds,
                          const std::function<void(const CooperationStructure&)>& visit);

/// Downward closure of the union of all structure cuboids. Falls back from
/// the exhaustive family enumeration to the code-shaped one (uniform
/// |A_u| and |B_u| with the output-count product bound) when the exhaustive
/// census exceeds the budget; the code-shaped families are exactly the
/// structures optimal codes induce, so the union of cuboids is unchanged.
RateRegion capacity_region(const Channel& ch, std::uint32_t n, const RegionBounds& bounds);

struct OracleBounds {
    std::optional<std::uint64_t> mu0; // default: |[[Y_1:n]]| over full inputs
    std::optional<std::uint64_t> mu1; // default: |X1^n|
    std::optional<std::uint64_t> mu2; // default: |X2^n|
    std::uint64_t node_budget = 200'000'000;
    unsigned threads = 1;
};

struct OracleRow {
    MuTriple mu{};
    bool achievable = false;
    std::optional<Code> witness; // encoders only
};

struct OracleRegion {
    std::uint32_t n = 1;
    std::vector<OracleRow> rows; // ascending in mu
    std::set<MuTriple> achievable_points() const;
};

/// Decoder-independent ground truth: for every triple within the bounds,
/// searches exhaustively (with exactness-preserving symmetry and collision
/// pruning) for encoder tables whose per-triple output sets are disjoint.
OracleRegion oracle_region(const Channel& ch, std::uint32_t n, const OracleBounds& bounds);

/// Zero-error capacity of a single-user channel (x2 singleton): maximum
/// over nonempty input subsets S of the [[X1|Y]]* cell count restricted to
/// S, cross-checked internally against the independence number of the
/// n-fold strong-product confusability graph.
InfoValue single_user_capacity(const Channel& ch, std::uint32_t n,
                               std::uint64_t node_budget = 200'000'000);

/// The oracle side of single_user_capacity, exposed for direct use.
std::uint64_t confusability_independence_number(const Channel& ch, std::uint32_t n,
                                                std::uint64_t node_budget = 200'000'000);

} // namespace zemac
