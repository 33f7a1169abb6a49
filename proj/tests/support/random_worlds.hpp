#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "zemac/uv_core.hpp"

namespace zemac::testing {

// splitmix64; self-contained so streams are identical on every platform
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

/// A seeded world over variables V1..V{num_vars} with per-variable alphabet
/// sizes in [1, max_symbols] and a nonempty sampled outcome set.
/// `token_prefix` shifts the alphabet so worlds can be unioned disjointly.
inline World random_world_prefixed(std::uint64_t seed, int num_vars,
                                   const std::string& token_prefix,
                                   int max_symbols = 4, int max_outcomes = 12) {
    Rng rng(seed * 0x2545f4914f6cdd1dull + 0x9e3779b9ull);
    std::vector<VariableName> vars;
    std::vector<int> alphabet(num_vars);
    for (int v = 0; v < num_vars; ++v) {
        vars.push_back("V" + std::to_string(v + 1));
        alphabet[v] = 1 + static_cast<int>(rng.below(max_symbols));
    }
    const int count = 1 + static_cast<int>(rng.below(max_outcomes));
    std::set<SymbolTuple> outcomes;
    for (int i = 0; i < count; ++i) {
        SymbolTuple row;
        for (int v = 0; v < num_vars; ++v)
            row.push_back(token_prefix +
                          std::string(1, static_cast<char>('0' + rng.below(alphabet[v]))));
        outcomes.insert(std::move(row));
    }
    return World::build(vars, {outcomes.begin(), outcomes.end()});
}

inline World random_world(std::uint64_t seed, int num_vars, int max_symbols = 4,
                          int max_outcomes = 12) {
    return random_world_prefixed(seed, num_vars, "", max_symbols, max_outcomes);
}

/// The disjoint union of two or three seeded sub-worlds over distinct
/// symbols. The overlap partition of such a world has one cell per block at
/// least, so common-variable lattices are nontrivial.
inline World random_block_world(std::uint64_t seed, int num_vars, int blocks,
                                int max_symbols = 3, int max_outcomes = 6) {
    std::vector<SymbolTuple> outcomes;
    std::vector<VariableName> vars;
    static const char* kPrefixes[] = {"", "b", "c"};
    for (int block = 0; block < blocks; ++block) {
        World w = random_world_prefixed(seed + 7919ull * block, num_vars,
                                        kPrefixes[block], max_symbols, max_outcomes);
        vars = w.variables();
        for (std::size_t i = 0; i < w.size(); ++i) outcomes.push_back(w.row_tokens(i));
    }
    return World::build(vars, outcomes);
}

} // namespace zemac::testing
