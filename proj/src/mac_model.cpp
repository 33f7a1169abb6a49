#include "zemac/mac_model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace zemac {

namespace {

std::vector<Symbol> canonical_alphabet(std::vector<Symbol> symbols, const char* name) {
    if (symbols.empty())
        throw ValidationError(std::string(name) + " alphabet is empty");
    std::sort(symbols.begin(), symbols.end());
    if (std::adjacent_find(symbols.begin(), symbols.end()) != symbols.end())
        throw ValidationError(std::string(name) + " alphabet has duplicate symbols");
    for (const auto& s : symbols)
        if (s.empty()) throw ValidationError(std::string(name) + " alphabet has an empty symbol");
    return symbols;
}

std::optional<std::size_t> index_in(const std::vector<Symbol>& alphabet, const Symbol& s) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet.begin());
}

std::string triple_text(const Transition& t) {
    return "(" + t.x1 + ", " + t.x2 + ", " + t.w + ")";
}

// Saturating product; anything above the cap collapses to cap+1.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > (cap + 1) / b + 1) return cap + 1;
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > cap) return cap + 1;
    return static_cast<std::uint64_t>(p);
}

std::uint64_t pow_sat(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) r = sat_mul(r, base, cap);
    return r;
}

} // namespace

Channel Channel::build(std::vector<Symbol> x1_alphabet, std::vector<Symbol> x2_alphabet,
                       std::vector<Symbol> w_alphabet, std::vector<Symbol> y_alphabet,
                       const std::vector<Transition>& transitions) {
    Channel ch;
    ch.x1_ = canonical_alphabet(std::move(x1_alphabet), "x1");
    ch.x2_ = canonical_alphabet(std::move(x2_alphabet), "x2");
    ch.w_ = canonical_alphabet(std::move(w_alphabet), "w");
    ch.y_ = canonical_alphabet(std::move(y_alphabet), "y");

    const std::size_t cells = ch.x1_.size() * ch.x2_.size() * ch.w_.size();
    constexpr std::uint32_t kUnset = 0xffffffffu;
    ch.table_.assign(cells, kUnset);
    for (const auto& t : transitions) {
        auto i1 = index_in(ch.x1_, t.x1);
        auto i2 = index_in(ch.x2_, t.x2);
        auto iw = index_in(ch.w_, t.w);
        auto iy = index_in(ch.y_, t.y);
        if (!i1 || !i2 || !iw)
            throw ValidationError("transition input " + triple_text(t) +
                                  " uses a symbol outside the declared alphabets");
        if (!iy)
            throw ValidationError("transition output '" + t.y +
                                  "' is not in the y alphabet");
        std::uint32_t& slot = ch.table_[(*i1 * ch.x2_.size() + *i2) * ch.w_.size() + *iw];
        if (slot != kUnset)
            throw ValidationError("duplicate transition for input " + triple_text(t));
        slot = static_cast<std::uint32_t>(*iy);
    }
    for (std::size_t i1 = 0; i1 < ch.x1_.size(); ++i1)
        for (std::size_t i2 = 0; i2 < ch.x2_.size(); ++i2)
            for (std::size_t iw = 0; iw < ch.w_.size(); ++iw)
                if (ch.table_[(i1 * ch.x2_.size() + i2) * ch.w_.size() + iw] == kUnset)
                    throw ValidationError(
                        "missing transition for input (" + ch.x1_[i1] + ", " +
                        ch.x2_[i2] + ", " + ch.w_[iw] + ")");
    return ch;
}

const Symbol& Channel::output(const Symbol& x1, const Symbol& x2, const Symbol& w) const {
    auto i1 = index_in(x1_, x1);
    auto i2 = index_in(x2_, x2);
    auto iw = index_in(w_, w);
    if (!i1 || !i2 || !iw)
        throw ValidationError("channel input (" + x1 + ", " + x2 + ", " + w +
                              ") is outside the declared alphabets");
    return y_[output_index(*i1, *i2, *iw)];
}

std::optional<std::size_t> Channel::x1_index(const Symbol& s) const { return index_in(x1_, s); }
std::optional<std::size_t> Channel::x2_index(const Symbol& s) const { return index_in(x2_, s); }
std::optional<std::size_t> Channel::w_index(const Symbol& s) const { return index_in(w_, s); }

CooperationStructure CooperationStructure::build(const Channel& ch, std::uint32_t n,
                                                 std::vector<StructureEntry> entries) {
    if (n < 1) throw ValidationError("blocklength must be at least 1");
    if (entries.empty()) throw ValidationError("cooperation structure has no entries");

    auto check_sequences = [&](const std::vector<SymbolTuple>& seqs,
                               const std::vector<Symbol>& alphabet,
                               const std::string& label, const char* side) {
        if (seqs.empty())
            throw ValidationError("entry '" + label + "' has an empty " + side + " set");
        for (const auto& seq : seqs) {
            if (seq.size() != n)
                throw ValidationError("entry '" + label + "' has a " + side +
                                      " sequence of length " + std::to_string(seq.size()) +
                                      ", expected " + std::to_string(n));
            for (const auto& s : seq)
                if (!index_in(alphabet, s))
                    throw ValidationError("entry '" + label + "' uses symbol '" + s +
                                          "' outside the " + side + " alphabet");
        }
    };

    std::unordered_set<std::string> labels;
    for (auto& e : entries) {
        if (e.label.empty()) throw ValidationError("empty structure entry label");
        if (!labels.insert(e.label).second)
            throw ValidationError("duplicate structure entry label '" + e.label + "'");
        check_sequences(e.a, ch.x1_alphabet(), e.label, "A");
        check_sequences(e.b, ch.x2_alphabet(), e.label, "B");
        std::sort(e.a.begin(), e.a.end());
        e.a.erase(std::unique(e.a.begin(), e.a.end()), e.a.end());
        std::sort(e.b.begin(), e.b.end());
        e.b.erase(std::unique(e.b.begin(), e.b.end()), e.b.end());
    }
    // canonical dedup: identical (A, B) pairs keep the smallest label
    std::sort(entries.begin(), entries.end(),
              [](const StructureEntry& l, const StructureEntry& r) {
                  if (l.a != r.a) return l.a < r.a;
                  if (l.b != r.b) return l.b < r.b;
                  return l.label < r.label;
              });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const StructureEntry& l, const StructureEntry& r) {
                                  return l.a == r.a && l.b == r.b;
                              }),
                  entries.end());
    std::sort(entries.begin(), entries.end(),
              [](const StructureEntry& l, const StructureEntry& r) {
                  return l.label < r.label;
              });

    CooperationStructure s;
    s.n_ = n;
    s.entries_ = std::move(entries);
    return s;
}

void Code::validate(const Channel& ch) const {
    spec().validate();
    auto check_table = [&](const std::map<std::pair<std::uint64_t, std::uint64_t>, SymbolTuple>& gamma,
                           std::uint64_t mu_private, const std::vector<Symbol>& alphabet,
                           const char* name) {
        for (std::uint64_t m0 = 1; m0 <= mu[0]; ++m0) {
            for (std::uint64_t m = 1; m <= mu_private; ++m) {
                auto it = gamma.find({m0, m});
                if (it == gamma.end())
                    throw ValidationError(std::string(name) + " is missing entry (m0=" +
                                          std::to_string(m0) + ", m=" + std::to_string(m) + ")");
                if (it->second.size() != n)
                    throw ValidationError(std::string(name) + " entry (m0=" +
                                          std::to_string(m0) + ", m=" + std::to_string(m) +
                                          ") has wrong sequence length");
                for (const auto& s : it->second)
                    if (!index_in(alphabet, s))
                        throw ValidationError(std::string(name) + " uses symbol '" + s +
                                              "' outside the channel alphabet");
            }
        }
        if (gamma.size() != mu[0] * mu_private)
            throw ValidationError(std::string(name) + " has entries outside [1:mu0] x [1:mu]");
    };
    check_table(gamma1, mu[1], ch.x1_alphabet(), "gamma1");
    check_table(gamma2, mu[2], ch.x2_alphabet(), "gamma2");
}

std::vector<VariableName> sequence_names(const std::string& base, std::uint32_t n) {
    std::vector<VariableName> names;
    names.reserve(n);
    for (std::uint32_t k = 1; k <= n; ++k)
        names.push_back(base + "[" + std::to_string(k) + "]");
    return names;
}

namespace {

// Enumerates W^n as index sequences in lexicographic order.
struct NoiseEnumerator {
    std::size_t w_size;
    std::uint32_t n;

    template <typename F>
    void for_each(F&& f) const {
        std::vector<std::size_t> seq(n, 0);
        while (true) {
            f(seq);
            std::uint32_t k = n;
            while (k > 0) {
                if (++seq[k - 1] < w_size) break;
                seq[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
    }
};

} // namespace

World build_coded_world(const Channel& ch, const MessageSpec& spec, const Code& code,
                        std::uint64_t world_cap) {
    spec.validate();
    code.validate(ch);
    if (code.n != spec.n || code.mu[0] != spec.mu0 || code.mu[1] != spec.mu1 ||
        code.mu[2] != spec.mu2)
        throw ValidationError("code does not match the message spec");

    std::uint64_t count = sat_mul(spec.mu0, spec.mu1, world_cap);
    count = sat_mul(count, spec.mu2, world_cap);
    count = sat_mul(count, pow_sat(ch.w_alphabet().size(), spec.n, world_cap), world_cap);
    if (count > world_cap)
        throw BudgetExceededError("coded world would exceed the outcome cap of " +
                                  std::to_string(world_cap));

    std::vector<VariableName> vars{"M0", "M1", "M2"};
    auto x1n = sequence_names("X1", spec.n);
    auto x2n = sequence_names("X2", spec.n);
    auto yn = sequence_names("Y", spec.n);
    vars.insert(vars.end(), x1n.begin(), x1n.end());
    vars.insert(vars.end(), x2n.begin(), x2n.end());
    vars.insert(vars.end(), yn.begin(), yn.end());

    std::vector<SymbolTuple> outcomes;
    NoiseEnumerator noise{ch.w_alphabet().size(), spec.n};
    for (std::uint64_t m0 = 1; m0 <= spec.mu0; ++m0) {
        for (std::uint64_t m1 = 1; m1 <= spec.mu1; ++m1) {
            for (std::uint64_t m2 = 1; m2 <= spec.mu2; ++m2) {
                const SymbolTuple& x1 = code.gamma1.at({m0, m1});
                const SymbolTuple& x2 = code.gamma2.at({m0, m2});
                noise.for_each([&](const std::vector<std::size_t>& wseq) {
                    SymbolTuple row;
                    row.reserve(3 + 3 * spec.n);
                    row.push_back(std::to_string(m0));
                    row.push_back(std::to_string(m1));
                    row.push_back(std::to_string(m2));
                    row.insert(row.end(), x1.begin(), x1.end());
                    row.insert(row.end(), x2.begin(), x2.end());
                    for (std::uint32_t k = 0; k < spec.n; ++k)
                        row.push_back(ch.output(x1[k], x2[k],
                                                ch.w_alphabet()[wseq[k]]));
                    outcomes.push_back(std::move(row));
                });
            }
        }
    }
    return World::build(std::move(vars), outcomes);
}

World build_structure_world(const Channel& ch, const CooperationStructure& s,
                            std::uint64_t world_cap) {
    const std::uint32_t n = s.n();
    std::uint64_t count = 0;
    const std::uint64_t noise_count = pow_sat(ch.w_alphabet().size(), n, world_cap);
    for (const auto& e : s.entries()) {
        std::uint64_t block = sat_mul(e.a.size(), e.b.size(), world_cap);
        block = sat_mul(block, noise_count, world_cap);
        count = std::min<std::uint64_t>(count + block, world_cap + 1);
    }
    if (count > world_cap)
        throw BudgetExceededError("structure world would exceed the outcome cap of " +
                                  std::to_string(world_cap));

    std::vector<VariableName> vars{"U"};
    auto x1n = sequence_names("X1", n);
    auto x2n = sequence_names("X2", n);
    auto yn = sequence_names("Y", n);
    vars.insert(vars.end(), x1n.begin(), x1n.end());
    vars.insert(vars.end(), x2n.begin(), x2n.end());
    vars.insert(vars.end(), yn.begin(), yn.end());

    std::vector<SymbolTuple> outcomes;
    NoiseEnumerator noise{ch.w_alphabet().size(), n};
    for (const auto& e : s.entries()) {
        for (const auto& a : e.a) {
            for (const auto& b : e.b) {
                noise.for_each([&](const std::vector<std::size_t>& wseq) {
                    SymbolTuple row;
                    row.reserve(1 + 3 * n);
                    row.push_back(e.label);
                    row.insert(row.end(), a.begin(), a.end());
                    row.insert(row.end(), b.begin(), b.end());
                    for (std::uint32_t k = 0; k < n; ++k)
                        row.push_back(ch.output(a[k], b[k], ch.w_alphabet()[wseq[k]]));
                    outcomes.push_back(std::move(row));
                });
            }
        }
    }
    return World::build(std::move(vars), outcomes);
}

bool check_structure_markov(const World& w) {
    std::vector<VariableName> x1, x2, y;
    bool has_u = false;
    for (const auto& v : w.variables()) {
        if (v == "U") has_u = true;
        else if (v.rfind("X1[", 0) == 0) x1.push_back(v);
        else if (v.rfind("X2[", 0) == 0) x2.push_back(v);
        else if (v.rfind("Y[", 0) == 0) y.push_back(v);
        else throw ValidationError("world variable '" + v + "' is not a structure-world variable");
    }
    if (!has_u || x1.empty() || x2.empty() || y.empty())
        throw ValidationError("world is missing structure variables");

    std::vector<VariableName> x12 = x1;
    x12.insert(x12.end(), x2.begin(), x2.end());
    return is_markov(w, x1, {"U"}, x2) && is_markov(w, {"U"}, x12, y);
}

} // namespace zemac
