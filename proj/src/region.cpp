#include "zemac/region.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <thread>

namespace zemac {

namespace {

constexpr std::uint64_t kLargeCap = 1'000'000'000'000ull;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    if (a == 0 || b == 0) return 0;
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > cap) return cap + 1;
    return static_cast<std::uint64_t>(p);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    if (a > cap || b > cap || a + b > cap) return cap + 1;
    return a + b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) r = sat_mul(r, base, cap);
    return r;
}

// min(C(n, k), cap + 1); the running value is integral at every step.
std::uint64_t sat_binom(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(c);
}

using IdxSeq = std::vector<std::uint32_t>;

std::vector<IdxSeq> all_index_sequences(std::size_t alphabet_size, std::uint32_t n,
                                        std::uint64_t cap) {
    if (pow_sat(alphabet_size, n, cap) > cap)
        throw BudgetExceededError("input sequence space exceeds the enumeration cap");
    std::vector<IdxSeq> out;
    IdxSeq seq(n, 0);
    while (true) {
        out.push_back(seq);
        std::uint32_t k = n;
        while (k > 0) {
            if (++seq[k - 1] < alphabet_size) break;
            seq[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }
    return out;
}

// Subsets of {0..m-1} with sizes 1..max_size, ascending size then lex.
std::vector<std::vector<std::uint32_t>> bounded_subsets(std::size_t m,
                                                        std::uint64_t max_size) {
    std::vector<std::vector<std::uint32_t>> out;
    const std::uint64_t top = std::min<std::uint64_t>(max_size, m);
    for (std::uint64_t k = 1; k <= top; ++k) {
        std::vector<std::uint32_t> combo(k);
        std::iota(combo.begin(), combo.end(), 0u);
        while (true) {
            out.push_back(combo);
            std::size_t i = k;
            while (i > 0) {
                if (combo[i - 1] + 1 <= m - (k - i) - 1) {
                    ++combo[i - 1];
                    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
                    break;
                }
                --i;
            }
            if (i == 0) break;
        }
    }
    return out;
}

SymbolTuple tokens_of(const IdxSeq& seq, const std::vector<Symbol>& alphabet) {
    SymbolTuple out(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) out[k] = alphabet[seq[k]];
    return out;
}

std::string padded_label(std::size_t index, std::size_t count) {
    std::string digits = std::to_string(index + 1);
    std::size_t width = std::to_string(count).size();
    return "u" + std::string(width - digits.size(), '0') + digits;
}

struct PairSpace {
    std::vector<IdxSeq> x1_seqs, x2_seqs;
    std::vector<std::vector<std::uint32_t>> a_subsets, b_subsets;

    std::size_t pair_count() const { return a_subsets.size() * b_subsets.size(); }
};

CooperationStructure family_structure(const Channel& ch, std::uint32_t n,
                                      const PairSpace& space,
                                      std::span<const std::uint32_t> family) {
    std::vector<StructureEntry> entries;
    entries.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const std::size_t ai = family[i] / space.b_subsets.size();
        const std::size_t bi = family[i] % space.b_subsets.size();
        StructureEntry e;
        e.label = padded_label(i, family.size());
        for (auto idx : space.a_subsets[ai])
            e.a.push_back(tokens_of(space.x1_seqs[idx], ch.x1_alphabet()));
        for (auto idx : space.b_subsets[bi])
            e.b.push_back(tokens_of(space.x2_seqs[idx], ch.x2_alphabet()));
        entries.push_back(std::move(e));
    }
    return CooperationStructure::build(ch, n, std::move(entries));
}

struct ResolvedBounds {
    std::uint64_t max_u = 0;
    std::uint64_t max_set_size = 0;
    std::uint64_t census_budget = 0;
    std::uint64_t world_cap = 0;
    unsigned threads = 1;
    std::uint64_t m1 = 0, m2 = 0; // |X1^n|, |X2^n| (saturating)
};

ResolvedBounds resolve_bounds(const Channel& ch, std::uint32_t n,
                              const RegionBounds& bounds) {
    if (n < 1) throw ValidationError("blocklength must be at least 1");
    ResolvedBounds r;
    r.m1 = pow_sat(ch.x1_alphabet().size(), n, kLargeCap);
    r.m2 = pow_sat(ch.x2_alphabet().size(), n, kLargeCap);
    r.max_set_size = bounds.max_set_size.value_or(std::max(r.m1, r.m2));
    r.max_u = bounds.max_u.value_or(sat_mul(r.m1, r.m2, kLargeCap));
    if (r.max_u < 1) throw ValidationError("max-u must be at least 1");
    if (r.max_set_size < 1) throw ValidationError("max-set-size must be at least 1");
    r.census_budget = bounds.census_budget;
    r.world_cap = bounds.world_cap;
    r.threads = std::max(1u, bounds.threads);
    return r;
}

std::uint64_t subset_count(std::uint64_t m, std::uint64_t max_size, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (std::uint64_t k = 1; k <= std::min(max_size, m); ++k) {
        total = sat_add(total, sat_binom(m, k, cap), cap);
        if (total > cap) break;
    }
    return total;
}

std::uint64_t exhaustive_census(const ResolvedBounds& r) {
    const std::uint64_t cap = r.census_budget;
    std::uint64_t pairs = sat_mul(subset_count(r.m1, r.max_set_size, cap),
                                  subset_count(r.m2, r.max_set_size, cap), cap);
    std::uint64_t total = 0;
    for (std::uint64_t k = 1; k <= r.max_u; ++k) {
        std::uint64_t c = sat_binom(pairs, k, cap);
        total = sat_add(total, c, cap);
        if (total > cap) break;
        if (c == 0) break; // k exceeded the pair count
    }
    return total;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!error) error = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned worker_count = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    pool.reserve(worker_count);
    for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// All length-n output sequences reachable over the full input product,
// sorted; used for the product bound, oracle masks and the code-shaped
// shape limit.
std::vector<IdxSeq> full_output_range(const Channel& ch, std::uint32_t n,
                                      std::uint64_t cap) {
    const std::uint64_t combos =
        sat_mul(sat_mul(pow_sat(ch.x1_alphabet().size(), n, cap),
                        pow_sat(ch.x2_alphabet().size(), n, cap), cap),
                pow_sat(ch.w_alphabet().size(), n, cap), cap);
    if (combos > cap)
        throw BudgetExceededError("full output range enumeration exceeds the cap");
    auto x1 = all_index_sequences(ch.x1_alphabet().size(), n, cap);
    auto x2 = all_index_sequences(ch.x2_alphabet().size(), n, cap);
    auto wn = all_index_sequences(ch.w_alphabet().size(), n, cap);
    std::vector<IdxSeq> out;
    IdxSeq y(n);
    for (const auto& a : x1)
        for (const auto& b : x2)
            for (const auto& w : wn) {
                for (std::uint32_t k = 0; k < n; ++k)
                    y[k] = ch.output_index(a[k], b[k], w[k]);
                out.push_back(y);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

RateCuboid rate_cuboid(const Channel& ch, const CooperationStructure& s,
                       std::uint64_t world_cap) {
    World w = build_structure_world(ch, s, world_cap);
    if (!check_structure_markov(w))
        throw InternalCheckError("structure world violates the Markov chains");
    const std::vector<VariableName> uvar{"U"};
    auto x1v = sequence_names("X1", s.n());
    auto x2v = sequence_names("X2", s.n());
    auto yv = sequence_names("Y", s.n());
    RateCuboid cuboid;
    cuboid.mu = {overlap_partition(w, uvar, yv).cell_count(),
                 conditional_info(w, x1v, yv, uvar).cells,
                 conditional_info(w, x2v, yv, uvar).cells};
    cuboid.source = s;
    return cuboid;
}

std::uint64_t structure_census(const Channel& ch, std::uint32_t n,
                               const RegionBounds& bounds) {
    return exhaustive_census(resolve_bounds(ch, n, bounds));
}

void enumerate_structures(const Channel& ch, std::uint32_t n, const RegionBounds& bounds,
                          const std::function<void(const CooperationStructure&)>& visit) {
    ResolvedBounds r = resolve_bounds(ch, n, bounds);
    const std::uint64_t census = exhaustive_census(r);
    if (census > r.census_budget)
        throw BudgetExceededError("structure census exceeds the budget of " +
                                  std::to_string(r.census_budget));

    PairSpace space;
    space.x1_seqs = all_index_sequences(ch.x1_alphabet().size(), n, kLargeCap);
    space.x2_seqs = all_index_sequences(ch.x2_alphabet().size(), n, kLargeCap);
    space.a_subsets = bounded_subsets(space.x1_seqs.size(), r.max_set_size);
    space.b_subsets = bounded_subsets(space.x2_seqs.size(), r.max_set_size);

    const std::size_t pair_count = space.pair_count();
    std::vector<std::uint32_t> family;
    auto dfs = [&](auto&& self, std::size_t start) -> void {
        for (std::size_t p = start; p < pair_count; ++p) {
            family.push_back(static_cast<std::uint32_t>(p));
            visit(family_structure(ch, n, space, family));
            if (family.size() < r.max_u) self(self, p + 1);
            family.pop_back();
        }
    };
    dfs(dfs, 0);
}

namespace {

// Identifies a structure inside the enumeration: the evaluation space
// (exhaustive has one, code-shaped has one per shape) plus the ascending
// pair indices. Compares lexicographically, which makes witness selection
// deterministic under any thread schedule.
struct WitnessRef {
    std::uint32_t space = 0;
    std::vector<std::uint32_t> family;

    bool operator<(const WitnessRef& other) const {
        if (space != other.space) return space < other.space;
        return family < other.family;
    }
};

struct RegionAccumulator {
    std::mutex mutex;
    std::map<MuTriple, WitnessRef> cuboids;

    void add(const MuTriple& mu, std::uint32_t space,
             std::span<const std::uint32_t> family) {
        WitnessRef ref{space, {family.begin(), family.end()}};
        std::lock_guard lock(mutex);
        auto it = cuboids.find(mu);
        if (it == cuboids.end()) cuboids.emplace(mu, std::move(ref));
        else if (ref < it->second) it->second = std::move(ref);
    }
};

// Per-space mask tables for the fast cuboid evaluation. Masks index the
// full output range [[Y_1:n]], so they exist only when it has at most 64
// points; otherwise the evaluation goes through the world machinery.
struct EvalSpace {
    PairSpace pairs;
    bool masks_ready = false;
    std::vector<std::uint64_t> row1;       // (x1 seq, b subset) -> outputs
    std::vector<std::uint64_t> row2;       // (x2 seq, a subset) -> outputs
    std::vector<std::uint64_t> pair_union; // pair -> all outputs of A x B

    void prepare_masks(const Channel& ch, std::uint32_t n,
                       const std::vector<IdxSeq>& y_range) {
        if (y_range.size() > 64) return;
        auto w_seqs = all_index_sequences(ch.w_alphabet().size(), n, kLargeCap);
        const std::size_t m1 = pairs.x1_seqs.size();
        const std::size_t m2 = pairs.x2_seqs.size();
        std::vector<std::uint64_t> seq_mask(m1 * m2, 0);
        IdxSeq y(n);
        for (std::size_t a = 0; a < m1; ++a)
            for (std::size_t b = 0; b < m2; ++b) {
                std::uint64_t mask = 0;
                for (const auto& w : w_seqs) {
                    for (std::uint32_t k = 0; k < n; ++k)
                        y[k] = ch.output_index(pairs.x1_seqs[a][k],
                                               pairs.x2_seqs[b][k], w[k]);
                    auto it = std::lower_bound(y_range.begin(), y_range.end(), y);
                    mask |= 1ull << (it - y_range.begin());
                }
                seq_mask[a * m2 + b] = mask;
            }
        const std::size_t acount = pairs.a_subsets.size();
        const std::size_t bcount = pairs.b_subsets.size();
        row1.assign(m1 * bcount, 0);
        for (std::size_t a = 0; a < m1; ++a)
            for (std::size_t bi = 0; bi < bcount; ++bi) {
                std::uint64_t mask = 0;
                for (auto b : pairs.b_subsets[bi]) mask |= seq_mask[a * m2 + b];
                row1[a * bcount + bi] = mask;
            }
        row2.assign(m2 * acount, 0);
        for (std::size_t b = 0; b < m2; ++b)
            for (std::size_t ai = 0; ai < acount; ++ai) {
                std::uint64_t mask = 0;
                for (auto a : pairs.a_subsets[ai]) mask |= seq_mask[a * m2 + b];
                row2[b * acount + ai] = mask;
            }
        pair_union.assign(acount * bcount, 0);
        for (std::size_t ai = 0; ai < acount; ++ai)
            for (std::size_t bi = 0; bi < bcount; ++bi) {
                std::uint64_t mask = 0;
                for (auto a : pairs.a_subsets[ai]) mask |= row1[a * bcount + bi];
                pair_union[ai * bcount + bi] = mask;
            }
        masks_ready = true;
    }
};

// Scratch buffers for the mask-based component counts; reused per thread.
struct EvalScratch {
    std::vector<std::uint32_t> parent;
    std::array<std::uint32_t, 64> anchor_version{};
    std::array<std::uint32_t, 64> anchor_value{};
    std::uint32_t version = 0;

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // components of the hypergraph on `count` elements whose element masks
    // are produced by `mask_of`; two elements sharing an output bit are
    // overlap connected
    template <typename MaskOf>
    std::uint64_t components(std::size_t count, const MaskOf& mask_of) {
        parent.resize(std::max(parent.size(), count));
        for (std::size_t i = 0; i < count; ++i)
            parent[i] = static_cast<std::uint32_t>(i);
        ++version;
        std::uint64_t cells = count;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t mask = mask_of(i);
            while (mask) {
                const auto bit = static_cast<std::uint32_t>(std::countr_zero(mask));
                mask &= mask - 1;
                if (anchor_version[bit] != version) {
                    anchor_version[bit] = version;
                    anchor_value[bit] = static_cast<std::uint32_t>(i);
                    continue;
                }
                auto ra = find(anchor_value[bit]);
                auto rb = find(static_cast<std::uint32_t>(i));
                if (ra != rb) {
                    parent[std::max(ra, rb)] = std::min(ra, rb);
                    --cells;
                }
            }
        }
        return cells;
    }
};

MuTriple fast_cuboid(const EvalSpace& space, std::span<const std::uint32_t> family,
                     EvalScratch& scratch) {
    const std::size_t bcount = space.pairs.b_subsets.size();
    const std::size_t acount = space.pairs.a_subsets.size();
    MuTriple mu{};
    mu[0] = scratch.components(family.size(), [&](std::size_t i) {
        return space.pair_union[family[i]];
    });
    std::uint64_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const std::size_t ai = family[i] / bcount;
        const std::size_t bi = family[i] % bcount;
        const auto& members_a = space.pairs.a_subsets[ai];
        std::uint64_t cells = scratch.components(members_a.size(), [&](std::size_t k) {
            return space.row1[members_a[k] * bcount + bi];
        });
        if (i == 0 || cells < c1) c1 = cells;
        const auto& members_b = space.pairs.b_subsets[bi];
        cells = scratch.components(members_b.size(), [&](std::size_t k) {
            return space.row2[members_b[k] * acount + ai];
        });
        if (i == 0 || cells < c2) c2 = cells;
    }
    mu[1] = c1;
    mu[2] = c2;
    return mu;
}

void evaluate_family(const Channel& ch, std::uint32_t n, const ResolvedBounds& r,
                     std::uint64_t y_count, const EvalSpace& space, std::uint32_t space_id,
                     std::span<const std::uint32_t> family, EvalScratch& scratch,
                     RegionAccumulator& acc) {
    MuTriple mu;
    if (space.masks_ready) {
        mu = fast_cuboid(space, family, scratch);
    } else {
        mu = rate_cuboid(ch, family_structure(ch, n, space.pairs, family), r.world_cap).mu;
    }
    // output counting: disjoint nonempty output sets, one per message triple
    if (sat_mul(sat_mul(mu[0], mu[1], y_count), mu[2], y_count) > y_count)
        throw InternalCheckError("structure cuboid violates the output-count bound");
    acc.add(mu, space_id, family);
}

RateRegion finish_region(const Channel& ch, std::uint32_t n, std::string strategy,
                         const std::vector<EvalSpace>& spaces, RegionAccumulator& acc) {
    RateRegion region;
    region.n = n;
    region.strategy = std::move(strategy);
    for (const auto& entry : acc.cuboids) {
        const MuTriple& mu = entry.first;
        for (std::uint64_t i = 1; i <= mu[0]; ++i)
            for (std::uint64_t j = 1; j <= mu[1]; ++j)
                for (std::uint64_t k = 1; k <= mu[2]; ++k)
                    region.points.insert({i, j, k});
    }
    for (const auto& entry : acc.cuboids) {
        const MuTriple& mu = entry.first;
        bool dominated = false;
        for (const auto& other : acc.cuboids) {
            if (other.first == mu) continue;
            if (other.first[0] >= mu[0] && other.first[1] >= mu[1] &&
                other.first[2] >= mu[2]) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            region.maximal.push_back(mu);
            region.witnesses.emplace(
                mu, family_structure(ch, n, spaces[entry.second.space].pairs,
                                     entry.second.family));
        }
    }
    return region;
}

} // namespace

RateRegion capacity_region(const Channel& ch, std::uint32_t n, const RegionBounds& bounds) {
    ResolvedBounds r = resolve_bounds(ch, n, bounds);
    const auto y_range = full_output_range(ch, n, 10'000'000);
    const std::uint64_t y_count = y_range.size();
    RegionAccumulator acc;

    if (exhaustive_census(r) <= r.census_budget) {
        std::vector<EvalSpace> spaces(1);
        EvalSpace& space = spaces[0];
        space.pairs.x1_seqs = all_index_sequences(ch.x1_alphabet().size(), n, kLargeCap);
        space.pairs.x2_seqs = all_index_sequences(ch.x2_alphabet().size(), n, kLargeCap);
        space.pairs.a_subsets = bounded_subsets(space.pairs.x1_seqs.size(), r.max_set_size);
        space.pairs.b_subsets = bounded_subsets(space.pairs.x2_seqs.size(), r.max_set_size);
        space.prepare_masks(ch, n, y_range);
        const std::size_t pair_count = space.pairs.pair_count();

        parallel_for(pair_count, r.threads, [&](std::size_t first) {
            EvalScratch scratch;
            std::vector<std::uint32_t> family{static_cast<std::uint32_t>(first)};
            auto dfs = [&](auto&& self, std::size_t start) -> void {
                evaluate_family(ch, n, r, y_count, space, 0, family, scratch, acc);
                if (family.size() >= r.max_u) return;
                for (std::size_t p = start; p < pair_count; ++p) {
                    family.push_back(static_cast<std::uint32_t>(p));
                    self(self, p + 1);
                    family.pop_back();
                }
            };
            dfs(dfs, first + 1);
        });
        return finish_region(ch, n, "exhaustive", spaces, acc);
    }

    // Code-shaped fallback: any achievable point is realized by a code, and
    // an optimal code induces a structure whose |A_u| and |B_u| are exactly
    // the private message counts with u0 * a * b bounded by the output
    // count. Enumerating those families therefore reproduces the full
    // region; the oracle-equality acceptance test is the empirical guard.
    struct Shape {
        std::uint64_t u0, a, b;
    };
    std::vector<Shape> shapes;
    std::uint64_t census = 0;
    for (std::uint64_t u0 = 1; u0 <= std::min(r.max_u, y_count); ++u0)
        for (std::uint64_t a = 1; a <= std::min(r.max_set_size, r.m1); ++a)
            for (std::uint64_t b = 1; b <= std::min(r.max_set_size, r.m2); ++b) {
                if (sat_mul(sat_mul(u0, a, y_count), b, y_count) > y_count) continue;
                std::uint64_t pair_count =
                    sat_mul(sat_binom(r.m1, a, r.census_budget),
                            sat_binom(r.m2, b, r.census_budget), r.census_budget);
                census = sat_add(census, sat_binom(pair_count, u0, r.census_budget),
                                 r.census_budget);
                shapes.push_back({u0, a, b});
            }
    if (census > r.census_budget)
        throw BudgetExceededError("structure census exceeds the budget of " +
                                  std::to_string(r.census_budget) +
                                  " even for code-shaped enumeration");

    auto x1_seqs = all_index_sequences(ch.x1_alphabet().size(), n, kLargeCap);
    auto x2_seqs = all_index_sequences(ch.x2_alphabet().size(), n, kLargeCap);
    std::vector<EvalSpace> spaces(shapes.size());
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        const Shape& shape = shapes[si];
        EvalSpace& space = spaces[si];
        space.pairs.x1_seqs = x1_seqs;
        space.pairs.x2_seqs = x2_seqs;
        space.pairs.a_subsets = bounded_subsets(x1_seqs.size(), shape.a);
        std::erase_if(space.pairs.a_subsets,
                      [&](const auto& c) { return c.size() != shape.a; });
        space.pairs.b_subsets = bounded_subsets(x2_seqs.size(), shape.b);
        std::erase_if(space.pairs.b_subsets,
                      [&](const auto& c) { return c.size() != shape.b; });
        const std::size_t pair_count = space.pairs.pair_count();
        if (pair_count < shape.u0) continue;
        space.prepare_masks(ch, n, y_range);

        parallel_for(pair_count, r.threads, [&](std::size_t first) {
            EvalScratch scratch;
            std::vector<std::uint32_t> family{static_cast<std::uint32_t>(first)};
            auto dfs = [&](auto&& self, std::size_t start) -> void {
                if (family.size() == shape.u0) {
                    evaluate_family(ch, n, r, y_count, space,
                                    static_cast<std::uint32_t>(si), family, scratch, acc);
                    return;
                }
                const std::size_t needed = shape.u0 - family.size();
                for (std::size_t p = start; p + needed <= pair_count; ++p) {
                    family.push_back(static_cast<std::uint32_t>(p));
                    self(self, p + 1);
                    family.pop_back();
                }
            };
            dfs(dfs, first + 1);
        });
    }
    return finish_region(ch, n, "code-shaped", spaces, acc);
}

std::set<MuTriple> OracleRegion::achievable_points() const {
    std::set<MuTriple> out;
    for (const auto& row : rows)
        if (row.achievable) out.insert(row.mu);
    return out;
}

namespace {

struct OracleContext {
    const Channel& ch;
    std::uint32_t n;
    std::vector<IdxSeq> x1_seqs, x2_seqs;
    std::vector<IdxSeq> y_range;
    std::vector<std::uint64_t> pair_mask; // (a * |x2_seqs| + b) -> output bits
    std::atomic<std::uint64_t> nodes{0};
    std::uint64_t node_budget = 0;

    void charge(std::uint64_t amount) {
        if (nodes.fetch_add(amount, std::memory_order_relaxed) + amount > node_budget)
            throw BudgetExceededError("oracle search exceeded the node budget of " +
                                      std::to_string(node_budget));
    }
};

struct Block {
    std::vector<std::uint32_t> s1, s2;
    std::uint64_t mask = 0;
};

// Enumerates valid blocks: an (S1, S2) pair whose per-codeword-pair output
// sets are pairwise disjoint. Blocks are the per-m0 building unit; message
// labels within an index are interchangeable, so S1 and S2 are kept sorted.
template <typename F>
void enumerate_blocks(OracleContext& ctx, std::uint64_t mu1, std::uint64_t mu2, F&& emit) {
    const std::size_t m1 = ctx.x1_seqs.size();
    const std::size_t m2 = ctx.x2_seqs.size();
    if (mu1 > m1 || mu2 > m2) return;

    std::vector<std::uint32_t> s2(mu2);
    std::iota(s2.begin(), s2.end(), 0u);
    bool more_s2 = true;
    while (more_s2) {
        // grow S1 one codeword at a time; every added codeword must keep all
        // pairs disjoint, which prunes invalid prefixes early
        std::vector<std::uint32_t> s1;
        std::vector<std::uint64_t> row_mask; // per S1 member, union over S2
        std::uint64_t total_mask = 0;
        bool abort = false;

        auto try_extend = [&](std::uint32_t a) -> std::optional<std::uint64_t> {
            ctx.charge(1);
            std::uint64_t row = 0;
            for (auto b : s2) {
                std::uint64_t m = ctx.pair_mask[a * m2 + b];
                if (m & row) return std::nullopt; // collision within the row
                row |= m;
            }
            if (row & total_mask) return std::nullopt; // collision with other rows
            return row;
        };

        auto dfs = [&](auto&& self, std::uint32_t start) -> void {
            if (abort) return;
            if (s1.size() == mu1) {
                Block block;
                block.s1 = s1;
                block.s2 = s2;
                block.mask = total_mask;
                if (!emit(block)) abort = true;
                return;
            }
            for (std::uint32_t a = start;
                 a + (mu1 - s1.size()) <= static_cast<std::uint32_t>(m1); ++a) {
                auto row = try_extend(a);
                if (!row) continue;
                s1.push_back(a);
                total_mask |= *row;
                row_mask.push_back(*row);
                self(self, a + 1);
                total_mask &= ~row_mask.back();
                row_mask.pop_back();
                s1.pop_back();
                if (abort) return;
            }
        };
        dfs(dfs, 0);
        if (abort) return;

        // next S2 combination
        std::size_t i = mu2;
        more_s2 = false;
        while (i > 0) {
            if (s2[i - 1] + 1 <= m2 - (mu2 - i) - 1) {
                ++s2[i - 1];
                for (std::size_t j = i; j < mu2; ++j) s2[j] = s2[j - 1] + 1;
                more_s2 = true;
                break;
            }
            --i;
        }
    }
}

std::optional<Code> search_triple(OracleContext& ctx, const MuTriple& mu) {
    // a valid code is mu0 blocks with pairwise disjoint output masks;
    // m0 labels are interchangeable, so blocks are taken in ascending
    // enumeration order
    std::optional<Code> found;
    auto materialize = [&](const std::vector<Block>& blocks) {
        Code code;
        code.n = ctx.n;
        code.mu = mu;
        for (std::size_t p = 0; p < blocks.size(); ++p) {
            for (std::uint64_t m = 1; m <= mu[1]; ++m)
                code.gamma1[{p + 1, m}] =
                    tokens_of(ctx.x1_seqs[blocks[p].s1[m - 1]], ctx.ch.x1_alphabet());
            for (std::uint64_t m = 1; m <= mu[2]; ++m)
                code.gamma2[{p + 1, m}] =
                    tokens_of(ctx.x2_seqs[blocks[p].s2[m - 1]], ctx.ch.x2_alphabet());
        }
        return code;
    };

    if (mu[0] == 1) {
        enumerate_blocks(ctx, mu[1], mu[2], [&](const Block& b) {
            found = materialize({b});
            return false;
        });
        return found;
    }

    std::vector<Block> blocks;
    enumerate_blocks(ctx, mu[1], mu[2], [&](const Block& b) {
        blocks.push_back(b);
        return true;
    });
    if (blocks.size() < mu[0]) return std::nullopt;

    std::vector<Block> chosen;
    std::uint64_t used_mask = 0;
    auto dfs = [&](auto&& self, std::size_t start) -> bool {
        if (chosen.size() == mu[0]) {
            found = materialize(chosen);
            return true;
        }
        const std::size_t needed = mu[0] - chosen.size();
        for (std::size_t i = start; i + needed <= blocks.size(); ++i) {
            ctx.charge(1);
            if (blocks[i].mask & used_mask) continue;
            chosen.push_back(blocks[i]);
            used_mask |= blocks[i].mask;
            if (self(self, i + 1)) return true;
            used_mask &= ~blocks[i].mask;
            chosen.pop_back();
        }
        return false;
    };
    dfs(dfs, 0);
    return found;
}

} // namespace

OracleRegion oracle_region(const Channel& ch, std::uint32_t n, const OracleBounds& bounds) {
    if (n < 1) throw ValidationError("blocklength must be at least 1");
    OracleContext ctx{ch, n, {}, {}, {}, {}, {}, 0};
    ctx.node_budget = bounds.node_budget;
    ctx.x1_seqs = all_index_sequences(ch.x1_alphabet().size(), n, 1'000'000);
    ctx.x2_seqs = all_index_sequences(ch.x2_alphabet().size(), n, 1'000'000);
    ctx.y_range = full_output_range(ch, n, 10'000'000);
    if (ctx.y_range.size() > 64)
        throw BudgetExceededError("oracle search supports at most 64 distinct output "
                                  "sequences; this channel has " +
                                  std::to_string(ctx.y_range.size()));

    auto y_bit = [&](const IdxSeq& y) {
        auto it = std::lower_bound(ctx.y_range.begin(), ctx.y_range.end(), y);
        return static_cast<std::uint32_t>(it - ctx.y_range.begin());
    };
    auto w_seqs = all_index_sequences(ch.w_alphabet().size(), n, 1'000'000);
    ctx.pair_mask.assign(ctx.x1_seqs.size() * ctx.x2_seqs.size(), 0);
    IdxSeq y(n);
    for (std::size_t a = 0; a < ctx.x1_seqs.size(); ++a)
        for (std::size_t b = 0; b < ctx.x2_seqs.size(); ++b) {
            std::uint64_t mask = 0;
            for (const auto& w : w_seqs) {
                for (std::uint32_t k = 0; k < n; ++k)
                    y[k] = ch.output_index(ctx.x1_seqs[a][k], ctx.x2_seqs[b][k], w[k]);
                mask |= 1ull << y_bit(y);
            }
            ctx.pair_mask[a * ctx.x2_seqs.size() + b] = mask;
        }

    const std::uint64_t mu0_max = bounds.mu0.value_or(ctx.y_range.size());
    const std::uint64_t mu1_max = bounds.mu1.value_or(ctx.x1_seqs.size());
    const std::uint64_t mu2_max = bounds.mu2.value_or(ctx.x2_seqs.size());
    if (mu0_max < 1 || mu1_max < 1 || mu2_max < 1)
        throw ValidationError("oracle message bounds must be at least 1");

    OracleRegion region;
    region.n = n;
    for (std::uint64_t mu0 = 1; mu0 <= mu0_max; ++mu0)
        for (std::uint64_t mu1 = 1; mu1 <= mu1_max; ++mu1)
            for (std::uint64_t mu2 = 1; mu2 <= mu2_max; ++mu2)
                region.rows.push_back({{mu0, mu1, mu2}, false, std::nullopt});

    parallel_for(region.rows.size(), std::max(1u, bounds.threads), [&](std::size_t i) {
        OracleRow& row = region.rows[i];
        const MuTriple& mu = row.mu;
        // more triples than distinct outputs can never decode uniquely
        if (sat_mul(sat_mul(mu[0], mu[1], ctx.y_range.size()), mu[2],
                    ctx.y_range.size()) > ctx.y_range.size())
            return;
        auto witness = search_triple(ctx, mu);
        if (witness) {
            MessageSpec spec{mu[0], mu[1], mu[2], n};
            if (!oracle_decodable(ch, spec, *witness))
                throw InternalCheckError("oracle witness fails the disjointness check");
            row.achievable = true;
            row.witness = std::move(witness);
        }
    });
    return region;
}

namespace {

struct SingleUserGraph {
    std::vector<std::uint64_t> adjacency; // bitmask per vertex
    std::size_t vertex_count = 0;
};

SingleUserGraph single_user_graph(const Channel& ch, std::uint32_t n) {
    if (ch.x2_alphabet().size() != 1)
        throw ValidationError("single-user capacity requires a singleton x2 alphabet");
    auto x1_seqs = all_index_sequences(ch.x1_alphabet().size(), n, 1'000'000);
    if (x1_seqs.size() > 64)
        throw BudgetExceededError("single-user search supports at most 64 input "
                                  "sequences; this channel has " +
                                  std::to_string(x1_seqs.size()));
    auto w_seqs = all_index_sequences(ch.w_alphabet().size(), n, 1'000'000);

    // output set per input sequence
    std::vector<std::vector<IdxSeq>> outputs(x1_seqs.size());
    IdxSeq y(n);
    for (std::size_t a = 0; a < x1_seqs.size(); ++a) {
        for (const auto& w : w_seqs) {
            for (std::uint32_t k = 0; k < n; ++k)
                y[k] = ch.output_index(x1_seqs[a][k], 0, w[k]);
            outputs[a].push_back(y);
        }
        std::sort(outputs[a].begin(), outputs[a].end());
        outputs[a].erase(std::unique(outputs[a].begin(), outputs[a].end()),
                         outputs[a].end());
    }

    SingleUserGraph g;
    g.vertex_count = x1_seqs.size();
    g.adjacency.assign(g.vertex_count, 0);
    for (std::size_t a = 0; a < g.vertex_count; ++a)
        for (std::size_t b = a + 1; b < g.vertex_count; ++b) {
            const auto& oa = outputs[a];
            const auto& ob = outputs[b];
            std::size_t ia = 0, ib = 0;
            bool meet = false;
            while (ia < oa.size() && ib < ob.size()) {
                if (oa[ia] < ob[ib]) ++ia;
                else if (ob[ib] < oa[ia]) ++ib;
                else { meet = true; break; }
            }
            if (meet) {
                g.adjacency[a] |= 1ull << b;
                g.adjacency[b] |= 1ull << a;
            }
        }
    return g;
}

// max over subsets S of the number of connected components of G[S]; the
// overlap partition of [[X1|Y]] restricted to S has exactly that many cells.
std::uint64_t max_restricted_components(const SingleUserGraph& g, std::uint64_t budget) {
    const std::size_t v = g.vertex_count;
    std::vector<std::uint8_t> order(v);
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    std::sort(order.begin(), order.end(), [&](std::uint8_t a, std::uint8_t b) {
        auto da = std::popcount(g.adjacency[a]);
        auto db = std::popcount(g.adjacency[b]);
        if (da != db) return da > db;
        return a < b;
    });

    std::uint64_t best = 0;
    std::uint64_t nodes = 0;
    std::vector<std::uint8_t> parent(v);
    std::iota(parent.begin(), parent.end(), std::uint8_t{0});

    auto find_root = [](std::vector<std::uint8_t>& p, std::uint8_t x) {
        while (p[x] != x) x = p[x];
        return x;
    };

    auto dfs = [&](auto&& self, std::size_t pos, std::vector<std::uint8_t>& p,
                   std::uint64_t included, std::uint64_t cc) -> void {
        if (++nodes > budget)
            throw BudgetExceededError("single-user subset search exceeded its node budget");
        if (cc > best) best = cc;
        if (pos == v) return;
        if (cc + (v - pos) <= best) return; // each inclusion adds at most one cell
        const std::uint8_t vertex = order[pos];

        // include: new component, merged with the components of its
        // included neighbours
        {
            std::vector<std::uint8_t> copy = p;
            copy[vertex] = vertex;
            std::uint64_t neighbours = g.adjacency[vertex] & included;
            std::uint64_t merged = 0;
            // the vertex's own fresh component must not count as a merge
            // when a chase lands on it mid-loop
            std::uint64_t roots_seen = 1ull << vertex;
            while (neighbours) {
                std::uint8_t u = static_cast<std::uint8_t>(std::countr_zero(neighbours));
                neighbours &= neighbours - 1;
                std::uint8_t root = find_root(copy, u);
                if (!(roots_seen & (1ull << root))) {
                    roots_seen |= 1ull << root;
                    ++merged;
                }
                copy[root] = vertex;
            }
            copy[vertex] = vertex;
            self(self, pos + 1, copy, included | (1ull << vertex), cc + 1 - merged);
        }
        // exclude
        self(self, pos + 1, p, included, cc);
    };
    dfs(dfs, 0, parent, 0, 0);
    return best;
}

std::uint64_t max_independent_set(const SingleUserGraph& g, std::uint64_t budget) {
    const std::size_t v = g.vertex_count;
    const std::uint64_t all = v == 64 ? ~0ull : (1ull << v) - 1;
    std::uint64_t best = 0;
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::uint64_t candidates, std::uint64_t size) -> void {
        if (++nodes > budget)
            throw BudgetExceededError("independence number search exceeded its node budget");
        if (size > best) best = size;
        if (candidates == 0) return;
        if (size + static_cast<std::uint64_t>(std::popcount(candidates)) <= best) return;
        const std::uint8_t vtx = static_cast<std::uint8_t>(std::countr_zero(candidates));
        self(self, candidates & ~(g.adjacency[vtx] | (1ull << vtx)), size + 1);
        self(self, candidates & ~(1ull << vtx), size);
    };
    dfs(dfs, all, 0);
    return best;
}

} // namespace

std::uint64_t confusability_independence_number(const Channel& ch, std::uint32_t n,
                                                std::uint64_t node_budget) {
    return max_independent_set(single_user_graph(ch, n), node_budget);
}

InfoValue single_user_capacity(const Channel& ch, std::uint32_t n,
                               std::uint64_t node_budget) {
    SingleUserGraph g = single_user_graph(ch, n);
    const std::uint64_t via_partitions = max_restricted_components(g, node_budget);
    const std::uint64_t via_independence = max_independent_set(g, node_budget);
    if (via_partitions != via_independence)
        throw InternalCheckError(
            "restricted overlap-partition maximum (" + std::to_string(via_partitions) +
            ") disagrees with the confusability independence number (" +
            std::to_string(via_independence) + ")");
    return {via_partitions};
}

} // namespace zemac
