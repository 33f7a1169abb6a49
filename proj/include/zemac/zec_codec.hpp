#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zemac/mac_model.hpp"

namespace zemac {

/// A witness that a code is not zero-error: the lexicographically first
/// (message triple, noise, output) event that decodes wrongly, together
/// with the conflicting decode or colliding triple when one exists.
struct Certificate {
    std::array<std::uint64_t, 3> message{};
    SymbolTuple noise;
    SymbolTuple y;
    std::optional<std::array<std::uint64_t, 3>> other;
};

struct VerifyReport {
    bool ok = false;
    std::optional<Certificate> certificate;
};

struct SynthesisResult {
    Code code; // carries the staged decoder tables
    std::array<std::uint64_t, 3> achieved{};
    /// index m0-1 -> the auxiliary value chosen for that common message.
    std::vector<std::string> representatives;
    struct CellAssignment {
        std::uint64_t m0;
        int encoder; // 1 or 2
        std::uint64_t m;
        std::uint32_t cell;
    };
    std::vector<CellAssignment> cell_assignments;
};

/// Builds a zero-error code from a cooperation structure: one common
/// message per [[U|Y]]*-cell, then per encoder one codeword per cell of the
/// conditional overlap partition, truncated to the count that every
/// auxiliary value supports. Decoder tables are materialized eagerly.
SynthesisResult synthesize_code(const Channel& ch, const CooperationStructure& s,
                                std::uint64_t world_cap = kDefaultWorldCap);

/// Three-stage table decode. Throws "inadmissible output sequence" for a y
/// the code never produces.
std::array<std::uint64_t, 3> decode(const Code& code, const SymbolTuple& y);

inline std::array<std::uint64_t, 3> decode(const SynthesisResult& r, const SymbolTuple& y) {
    return decode(r.code, y);
}

/// Exhaustive check over all message triples and noise sequences. With
/// decoder tables the staged decode is round-tripped; without them the
/// output sets must identify the triple uniquely.
VerifyReport verify_zero_error(const Channel& ch, const MessageSpec& spec, const Code& code,
                               std::uint64_t world_cap = kDefaultWorldCap);

/// Decoder-independent zero-error test: the per-triple output sets are
/// pairwise disjoint.
bool oracle_decodable(const Channel& ch, const MessageSpec& spec, const Code& encoders,
                      std::uint64_t world_cap = kDefaultWorldCap);

} // namespace zemac
