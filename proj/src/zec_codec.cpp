#include "zemac/zec_codec.hpp"

#include <algorithm>
#include <map>

#include "zemac/overlap.hpp"

namespace zemac {

namespace {

std::vector<SymbolId> project(std::span<const SymbolId> row,
                              const std::vector<std::size_t>& idx) {
    std::vector<SymbolId> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = row[idx[k]];
    return out;
}

// Matching-partition correspondence between [[A|B]]* and [[B|A]]*: for every
// admissible (a, b), the cell of a determines the cell of b and vice versa.
std::vector<std::uint32_t> matching_map(const World& w, const Partition& from,
                                        const std::vector<std::size_t>& from_idx,
                                        const Partition& to,
                                        const std::vector<std::size_t>& to_idx,
                                        const std::vector<std::pair<std::size_t, SymbolId>>& filter) {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> match(from.cell_count(), kUnset);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        bool ok = true;
        for (const auto& [col, id] : filter)
            if (row[col] != id) { ok = false; break; }
        if (!ok) continue;
        auto fl = from.label_of(*from.ground().index_of(project(row, from_idx)));
        auto tl = to.label_of(*to.ground().index_of(project(row, to_idx)));
        if (match[fl] == kUnset) match[fl] = tl;
        else if (match[fl] != tl)
            throw InternalCheckError("matching overlap partitions are inconsistent");
    }
    for (auto m : match)
        if (m == kUnset)
            throw InternalCheckError("matching overlap partition has an unreached cell");
    return match;
}

struct MessageEnumeration {
    const Channel& ch;
    const MessageSpec& spec;
    const Code& code;

    /// Visits (m0, m1, m2, noise tokens, output tokens) in lexicographic
    /// message-then-noise order; stops early when f returns false.
    template <typename F>
    void for_each(F&& f) const {
        const auto& walph = ch.w_alphabet();
        std::vector<std::size_t> wseq(spec.n, 0);
        for (std::uint64_t m0 = 1; m0 <= spec.mu0; ++m0)
            for (std::uint64_t m1 = 1; m1 <= spec.mu1; ++m1)
                for (std::uint64_t m2 = 1; m2 <= spec.mu2; ++m2) {
                    const SymbolTuple& x1 = code.gamma1.at({m0, m1});
                    const SymbolTuple& x2 = code.gamma2.at({m0, m2});
                    std::fill(wseq.begin(), wseq.end(), 0);
                    while (true) {
                        SymbolTuple noise(spec.n), y(spec.n);
                        for (std::uint32_t k = 0; k < spec.n; ++k) {
                            noise[k] = walph[wseq[k]];
                            y[k] = ch.output(x1[k], x2[k], noise[k]);
                        }
                        if (!f(std::array<std::uint64_t, 3>{m0, m1, m2}, noise, y))
                            return;
                        std::uint32_t k = spec.n;
                        while (k > 0) {
                            if (++wseq[k - 1] < walph.size()) break;
                            wseq[k - 1] = 0;
                            --k;
                        }
                        if (k == 0) break;
                    }
                }
    }
};

void check_enumeration_budget(const Channel& ch, const MessageSpec& spec,
                              std::uint64_t world_cap) {
    long double total = static_cast<long double>(spec.mu0) * spec.mu1 * spec.mu2;
    for (std::uint32_t k = 0; k < spec.n; ++k)
        total *= static_cast<long double>(ch.w_alphabet().size());
    if (total > static_cast<long double>(world_cap))
        throw BudgetExceededError("zero-error enumeration would exceed the cap of " +
                                  std::to_string(world_cap));
}

} // namespace

SynthesisResult synthesize_code(const Channel& ch, const CooperationStructure& s,
                                std::uint64_t world_cap) {
    World w = build_structure_world(ch, s, world_cap);
    if (!check_structure_markov(w))
        throw InternalCheckError("structure world violates the Markov chains");

    const std::uint32_t n = s.n();
    const std::vector<VariableName> uvar{"U"};
    auto x1v = sequence_names("X1", n);
    auto x2v = sequence_names("X2", n);
    auto yv = sequence_names("Y", n);

    Partition pu = overlap_partition(w, uvar, yv);
    const std::uint64_t mu0 = pu.cell_count();

    // representative u per cell: the lexicographically smallest member
    std::vector<std::string> reps;
    reps.reserve(mu0);
    for (const auto& cell : pu.cells())
        reps.push_back(pu.ground().row_tokens(cell.front())[0]);

    // conditional overlap partitions of each encoder's inputs, for every u
    const Range& u_range = pu.ground();
    std::vector<Partition> px1, px2;
    px1.reserve(u_range.size());
    px2.reserve(u_range.size());
    std::uint64_t mu1 = 0, mu2 = 0;
    for (std::size_t ui = 0; ui < u_range.size(); ++ui) {
        Assignment given{uvar, u_range.row_tokens(ui)};
        px1.push_back(conditional_overlap_partition(w, x1v, yv, given));
        px2.push_back(conditional_overlap_partition(w, x2v, yv, given));
        std::uint64_t c1 = px1.back().cell_count();
        std::uint64_t c2 = px2.back().cell_count();
        if (ui == 0 || c1 < mu1) mu1 = c1;
        if (ui == 0 || c2 < mu2) mu2 = c2;
    }

    SynthesisResult result;
    result.achieved = {mu0, mu1, mu2};
    result.representatives = reps;
    result.code.n = n;
    result.code.mu = {mu0, mu1, mu2};

    auto rep_index = [&](std::uint64_t m0) {
        SymbolTuple token{reps[m0 - 1]};
        return *u_range.index_of_tokens(token);
    };

    for (std::uint64_t m0 = 1; m0 <= mu0; ++m0) {
        std::size_t ui = rep_index(m0);
        for (std::uint64_t m = 1; m <= mu1; ++m) {
            const Partition& p = px1[ui];
            result.code.gamma1[{m0, m}] = p.ground().row_tokens(p.cells()[m - 1].front());
            result.cell_assignments.push_back({m0, 1, m, static_cast<std::uint32_t>(m - 1)});
        }
        for (std::uint64_t m = 1; m <= mu2; ++m) {
            const Partition& p = px2[ui];
            result.code.gamma2[{m0, m}] = p.ground().row_tokens(p.cells()[m - 1].front());
            result.cell_assignments.push_back({m0, 2, m, static_cast<std::uint32_t>(m - 1)});
        }
    }

    // decoder stage 1: [[Y|U]]*-cell of y names the [[U|Y]]*-cell of u(m0)
    DecoderTables tables;
    auto uidx = w.resolve(uvar);
    auto yidx = w.resolve(yv);
    auto x1idx = w.resolve(x1v);
    auto x2idx = w.resolve(x2v);

    Partition qy = overlap_partition(w, yv, uvar);
    auto y_to_u_cell = matching_map(w, qy, yidx, pu, uidx, {});
    for (std::size_t yi = 0; yi < qy.ground().size(); ++yi)
        tables.stage0[qy.ground().row_tokens(yi)] = y_to_u_cell[qy.label_of(yi)] + 1;

    // decoder stages 2 and 3: conditional matching partitions at each
    // representative
    auto build_stage = [&](const std::vector<VariableName>& xv,
                           const std::vector<std::size_t>& xcols,
                           const std::vector<Partition>& px, std::uint64_t mu_private,
                           std::map<std::pair<std::uint64_t, SymbolTuple>, std::uint64_t>& out) {
        for (std::uint64_t m0 = 1; m0 <= mu0; ++m0) {
            std::size_t ui = rep_index(m0);
            Assignment given{uvar, u_range.row_tokens(ui)};
            Partition qy_cond = conditional_overlap_partition(w, yv, xv, given);
            SymbolId uid = *w.symbols()->find(reps[m0 - 1]);
            std::vector<std::pair<std::size_t, SymbolId>> filter{{uidx[0], uid}};
            auto y_to_x_cell = matching_map(w, qy_cond, yidx, px[ui], xcols, filter);
            for (std::size_t yi = 0; yi < qy_cond.ground().size(); ++yi) {
                std::uint32_t cell = y_to_x_cell[qy_cond.label_of(yi)];
                if (cell < mu_private)
                    out[{m0, qy_cond.ground().row_tokens(yi)}] = cell + 1;
            }
        }
    };
    build_stage(x1v, x1idx, px1, mu1, tables.stage1);
    build_stage(x2v, x2idx, px2, mu2, tables.stage2);

    result.code.decoder = std::move(tables);
    return result;
}

std::array<std::uint64_t, 3> decode(const Code& code, const SymbolTuple& y) {
    if (!code.decoder)
        throw ValidationError("code has no decoder tables");
    const DecoderTables& t = *code.decoder;
    auto s0 = t.stage0.find(y);
    if (s0 == t.stage0.end())
        throw ValidationError("inadmissible output sequence");
    std::uint64_t m0 = s0->second;
    auto s1 = t.stage1.find({m0, y});
    auto s2 = t.stage2.find({m0, y});
    if (s1 == t.stage1.end() || s2 == t.stage2.end())
        throw ValidationError("inadmissible output sequence");
    return {m0, s1->second, s2->second};
}

VerifyReport verify_zero_error(const Channel& ch, const MessageSpec& spec, const Code& code,
                               std::uint64_t world_cap) {
    spec.validate();
    code.validate(ch);
    if (code.n != spec.n || code.mu[0] != spec.mu0 || code.mu[1] != spec.mu1 ||
        code.mu[2] != spec.mu2)
        throw ValidationError("code does not match the message spec");
    check_enumeration_budget(ch, spec, world_cap);

    VerifyReport report;
    report.ok = true;
    MessageEnumeration enumeration{ch, spec, code};

    if (code.decoder) {
        enumeration.for_each([&](const std::array<std::uint64_t, 3>& msg,
                                 const SymbolTuple& noise, const SymbolTuple& y) {
            std::optional<std::array<std::uint64_t, 3>> decoded;
            try {
                decoded = decode(code, y);
            } catch (const ValidationError&) {
            }
            if (!decoded || *decoded != msg) {
                report.ok = false;
                report.certificate = {msg, noise, y, decoded};
                return false;
            }
            return true;
        });
        return report;
    }

    // no decoder tables: every output sequence must identify its triple
    std::map<SymbolTuple, std::array<std::uint64_t, 3>> owner;
    enumeration.for_each([&](const std::array<std::uint64_t, 3>& msg,
                             const SymbolTuple& noise, const SymbolTuple& y) {
        auto [it, inserted] = owner.emplace(y, msg);
        if (!inserted && it->second != msg) {
            report.ok = false;
            report.certificate = {msg, noise, y, it->second};
            return false;
        }
        return true;
    });
    return report;
}

bool oracle_decodable(const Channel& ch, const MessageSpec& spec, const Code& encoders,
                      std::uint64_t world_cap) {
    spec.validate();
    encoders.validate(ch);
    check_enumeration_budget(ch, spec, world_cap);

    // per-triple output sets, then a pairwise disjointness check
    std::vector<std::vector<SymbolTuple>> output_sets;
    MessageEnumeration enumeration{ch, spec, encoders};
    std::array<std::uint64_t, 3> current{0, 0, 0};
    enumeration.for_each([&](const std::array<std::uint64_t, 3>& msg, const SymbolTuple&,
                             const SymbolTuple& y) {
        if (msg != current) {
            output_sets.emplace_back();
            current = msg;
        }
        output_sets.back().push_back(y);
        return true;
    });
    for (auto& set : output_sets) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    for (std::size_t i = 0; i < output_sets.size(); ++i) {
        for (std::size_t j = i + 1; j < output_sets.size(); ++j) {
            const auto& a = output_sets[i];
            const auto& b = output_sets[j];
            std::size_t ia = 0, ib = 0;
            while (ia < a.size() && ib < b.size()) {
                if (a[ia] < b[ib]) ++ia;
                else if (b[ib] < a[ia]) ++ib;
                else return false;
            }
        }
    }
    return true;
}

} // namespace zemac
