#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zemac/uv_core.hpp"

namespace zemac {

struct Transition {
    Symbol x1, x2, w, y;
};

/// A stationary memoryless two-transmitter channel: a total function
/// y = f(x1, x2, w) over four finite alphabets. |W| = 1 models a
/// deterministic channel; the noise alphabet is always explicit.
class Channel {
public:
    static Channel build(std::vector<Symbol> x1_alphabet,
                         std::vector<Symbol> x2_alphabet,
                         std::vector<Symbol> w_alphabet,
                         std::vector<Symbol> y_alphabet,
                         const std::vector<Transition>& transitions);

    const std::vector<Symbol>& x1_alphabet() const { return x1_; }
    const std::vector<Symbol>& x2_alphabet() const { return x2_; }
    const std::vector<Symbol>& w_alphabet() const { return w_; }
    const std::vector<Symbol>& y_alphabet() const { return y_; }

    std::size_t table_size() const { return table_.size(); }
    /// Output index for input indices into the sorted alphabets.
    std::uint32_t output_index(std::size_t i1, std::size_t i2, std::size_t iw) const {
        return table_[(i1 * x2_.size() + i2) * w_.size() + iw];
    }
    const Symbol& output(const Symbol& x1, const Symbol& x2, const Symbol& w) const;

    std::optional<std::size_t> x1_index(const Symbol& s) const;
    std::optional<std::size_t> x2_index(const Symbol& s) const;
    std::optional<std::size_t> w_index(const Symbol& s) const;

private:
    std::vector<Symbol> x1_, x2_, w_, y_;
    std::vector<std::uint32_t> table_; // row-major over (x1, x2, w)
};

struct MessageSpec {
    std::uint64_t mu0 = 1, mu1 = 1, mu2 = 1;
    std::uint32_t n = 1;

    void validate() const {
        if (mu0 < 1 || mu1 < 1 || mu2 < 1)
            throw ValidationError("message counts must be at least 1");
        if (n < 1) throw ValidationError("blocklength must be at least 1");
    }
};

/// One auxiliary value u with its product family A_u x B_u of length-n
/// input sequences. Realizes the Markov chain X1 <-> U <-> X2.
struct StructureEntry {
    std::string label;
    std::vector<SymbolTuple> a; // X1 sequences, each of length n
    std::vector<SymbolTuple> b; // X2 sequences
};

class CooperationStructure {
public:
    static CooperationStructure build(const Channel& ch, std::uint32_t n,
                                      std::vector<StructureEntry> entries);

    std::uint32_t n() const { return n_; }
    const std::vector<StructureEntry>& entries() const { return entries_; }

private:
    std::uint32_t n_ = 0;
    std::vector<StructureEntry> entries_;
};

struct DecoderTables {
    std::map<SymbolTuple, std::uint64_t> stage0;                          // y -> m0
    std::map<std::pair<std::uint64_t, SymbolTuple>, std::uint64_t> stage1; // (m0, y) -> m1
    std::map<std::pair<std::uint64_t, SymbolTuple>, std::uint64_t> stage2; // (m0, y) -> m2
};

/// Encoder lookup tables (total on [1:mu0] x [1:mui]) plus, optionally,
/// the staged decoder tables.
struct Code {
    std::uint32_t n = 1;
    std::array<std::uint64_t, 3> mu{1, 1, 1};
    std::map<std::pair<std::uint64_t, std::uint64_t>, SymbolTuple> gamma1;
    std::map<std::pair<std::uint64_t, std::uint64_t>, SymbolTuple> gamma2;
    std::optional<DecoderTables> decoder;

    MessageSpec spec() const { return {mu[0], mu[1], mu[2], n}; }
    void validate(const Channel& ch) const;
};

inline constexpr std::uint64_t kDefaultWorldCap = 1'000'000;

/// World over (M0, M1, M2, X1[1..n], X2[1..n], Y[1..n]) enumerating every
/// message triple against every noise sequence.
World build_coded_world(const Channel& ch, const MessageSpec& spec, const Code& code,
                        std::uint64_t world_cap = kDefaultWorldCap);

/// World over (U, X1[1..n], X2[1..n], Y[1..n]) with outcomes
/// {(u, a, b, f(a, b, w)) : a in A_u, b in B_u, w in W^n}.
World build_structure_world(const Channel& ch, const CooperationStructure& s,
                            std::uint64_t world_cap = kDefaultWorldCap);

/// Asserts both Markov chains of a structure world:
/// X1 <-> U <-> X2 and U <-> (X1, X2) <-> Y.
bool check_structure_markov(const World& w);

/// Variable-name helpers shared by the codec and region modules.
std::vector<VariableName> sequence_names(const std::string& base, std::uint32_t n);

} // namespace zemac
