#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zemac/errors.hpp"

namespace zemac {

using Symbol = std::string;
using VariableName = std::string;
using SymbolTuple = std::vector<Symbol>;
using SymbolId = std::uint32_t;

/// Immutable symbol interner. Ids are assigned in lexicographic token order,
/// so comparing id tuples positionwise agrees with comparing token tuples.
class SymbolTable {
public:
    explicit SymbolTable(std::vector<Symbol> sorted_unique_tokens);

    std::optional<SymbolId> find(const Symbol& token) const;
    const Symbol& token(SymbolId id) const { return tokens_[id]; }
    std::size_t size() const { return tokens_.size(); }

private:
    std::vector<Symbol> tokens_;
};

/// The value set of a variable subset: an ordered, duplicate-free list of
/// symbol tuples laid out in the owning world's declaration order.
class Range {
public:
    Range() = default;
    static Range from_rows(std::vector<VariableName> variables,
                           std::shared_ptr<const SymbolTable> table,
                           std::vector<std::vector<SymbolId>> rows);

    const std::vector<VariableName>& variables() const { return variables_; }
    std::size_t width() const { return width_; }
    std::size_t size() const { return data_.size() / (width_ == 0 ? 1 : width_); }
    std::span<const SymbolId> row(std::size_t i) const {
        return {data_.data() + i * width_, width_};
    }
    SymbolTuple row_tokens(std::size_t i) const;
    const std::shared_ptr<const SymbolTable>& symbols() const { return table_; }

    /// Binary search; nullopt when the tuple is not a point of the range.
    std::optional<std::size_t> index_of(std::span<const SymbolId> ids) const;
    std::optional<std::size_t> index_of_tokens(const SymbolTuple& tokens) const;

    bool operator==(const Range& other) const;

private:
    std::vector<VariableName> variables_;
    std::shared_ptr<const SymbolTable> table_;
    std::size_t width_ = 0;
    std::vector<SymbolId> data_; // sorted unique rows, row-major
};

/// A named assignment of symbols to a variable subset, e.g. {W=a, V=b}.
struct Assignment {
    std::vector<VariableName> variables;
    SymbolTuple values;
};

/// A finite sample space: every outcome realizes every declared variable.
/// Outcomes are a set (deduplicated) stored in lexicographic token order.
class World {
public:
    static World build(std::vector<VariableName> variables,
                       const std::vector<SymbolTuple>& outcomes);

    const std::vector<VariableName>& variables() const { return variables_; }
    std::size_t width() const { return variables_.size(); }
    std::size_t size() const { return data_.size() / variables_.size(); }
    std::span<const SymbolId> row(std::size_t i) const {
        return {data_.data() + i * variables_.size(), variables_.size()};
    }
    SymbolTuple row_tokens(std::size_t i) const;
    const std::shared_ptr<const SymbolTable>& symbols() const { return table_; }

    /// Maps a variable subset to column indices in declaration order.
    /// Rejects unknown and duplicated names.
    std::vector<std::size_t> resolve(const std::vector<VariableName>& vars) const;

private:
    std::vector<VariableName> variables_;
    std::shared_ptr<const SymbolTable> table_;
    std::vector<SymbolId> data_;
};

/// The family {[[X|y]] : y in [[Y]]}, keyed by the conditioner's points.
class ConditionalRangeFamily {
public:
    struct Entry {
        SymbolTuple given;
        Range range;
    };

    ConditionalRangeFamily(std::vector<VariableName> target,
                           std::vector<VariableName> conditioner,
                           std::vector<Entry> entries)
        : target_(std::move(target)),
          conditioner_(std::move(conditioner)),
          entries_(std::move(entries)) {}

    const std::vector<VariableName>& target() const { return target_; }
    const std::vector<VariableName>& conditioner() const { return conditioner_; }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<VariableName> target_;
    std::vector<VariableName> conditioner_;
    std::vector<Entry> entries_;
};

Range marginal_range(const World& w, const std::vector<VariableName>& vars);

/// [[target | cond]]; conditioning on a tuple no outcome realizes is an
/// error ("inadmissible condition"), not an empty range.
Range conditional_range(const World& w, const std::vector<VariableName>& target,
                        const Assignment& cond);

ConditionalRangeFamily conditional_family(const World& w,
                                          const std::vector<VariableName>& target,
                                          const std::vector<VariableName>& conditioner);

/// Cartesian-product test: joint range of all groups equals the product of
/// the groups' marginal ranges.
bool is_unrelated(const World& w, const std::vector<std::vector<VariableName>>& groups);

/// Markov uncertainty chain left <-> mid <-> right:
/// [[left | y, x2]] == [[left | y]] for every (y, x2) in [[mid, right]].
bool is_markov(const World& w, const std::vector<VariableName>& left,
               const std::vector<VariableName>& mid,
               const std::vector<VariableName>& right);

} // namespace zemac
