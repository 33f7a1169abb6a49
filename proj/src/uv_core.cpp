#include "zemac/uv_core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace zemac {

namespace {

std::vector<SymbolId> project(std::span<const SymbolId> row,
                              const std::vector<std::size_t>& idx) {
    std::vector<SymbolId> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = row[idx[k]];
    return out;
}

std::vector<VariableName> pick_names(const std::vector<VariableName>& all,
                                     const std::vector<std::size_t>& idx) {
    std::vector<VariableName> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = all[idx[k]];
    return out;
}

void require_disjoint(const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& b,
                      const char* what) {
    for (std::size_t i : a)
        for (std::size_t j : b)
            if (i == j) throw ValidationError(what);
}

} // namespace

SymbolTable::SymbolTable(std::vector<Symbol> sorted_unique_tokens)
    : tokens_(std::move(sorted_unique_tokens)) {}

std::optional<SymbolId> SymbolTable::find(const Symbol& token) const {
    auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
    if (it == tokens_.end() || *it != token) return std::nullopt;
    return static_cast<SymbolId>(it - tokens_.begin());
}

Range Range::from_rows(std::vector<VariableName> variables,
                       std::shared_ptr<const SymbolTable> table,
                       std::vector<std::vector<SymbolId>> rows) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    Range r;
    r.width_ = variables.size();
    r.variables_ = std::move(variables);
    r.table_ = std::move(table);
    r.data_.reserve(rows.size() * r.width_);
    for (const auto& row : rows)
        r.data_.insert(r.data_.end(), row.begin(), row.end());
    return r;
}

SymbolTuple Range::row_tokens(std::size_t i) const {
    SymbolTuple out(width_);
    auto r = row(i);
    for (std::size_t k = 0; k < width_; ++k) out[k] = table_->token(r[k]);
    return out;
}

std::optional<std::size_t> Range::index_of(std::span<const SymbolId> ids) const {
    if (ids.size() != width_) return std::nullopt;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto r = row(mid);
        int cmp = 0;
        for (std::size_t k = 0; k < width_; ++k) {
            if (r[k] < ids[k]) { cmp = -1; break; }
            if (r[k] > ids[k]) { cmp = 1; break; }
        }
        if (cmp < 0) lo = mid + 1;
        else if (cmp > 0) hi = mid;
        else return mid;
    }
    return std::nullopt;
}

std::optional<std::size_t> Range::index_of_tokens(const SymbolTuple& tokens) const {
    if (tokens.size() != width_) return std::nullopt;
    std::vector<SymbolId> ids(width_);
    for (std::size_t k = 0; k < width_; ++k) {
        auto id = table_->find(tokens[k]);
        if (!id) return std::nullopt;
        ids[k] = *id;
    }
    return index_of(ids);
}

bool Range::operator==(const Range& other) const {
    if (variables_ != other.variables_) return false;
    if (table_ == other.table_) return data_ == other.data_;
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (row_tokens(i) != other.row_tokens(i)) return false;
    return true;
}

World World::build(std::vector<VariableName> variables,
                   const std::vector<SymbolTuple>& outcomes) {
    if (variables.empty()) throw ValidationError("world has no variables");
    {
        std::unordered_set<std::string> seen;
        for (const auto& v : variables) {
            if (v.empty()) throw ValidationError("empty variable name");
            if (!seen.insert(v).second)
                throw ValidationError("duplicate variable name '" + v + "'");
        }
    }
    if (outcomes.empty()) throw ValidationError("empty outcome set");

    const std::size_t width = variables.size();
    std::vector<Symbol> tokens;
    for (const auto& o : outcomes) {
        if (o.size() != width)
            throw ValidationError("outcome arity " + std::to_string(o.size()) +
                                  " does not match " + std::to_string(width) +
                                  " declared variables");
        for (const auto& s : o) {
            if (s.empty()) throw ValidationError("empty symbol token");
            tokens.push_back(s);
        }
    }
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    auto table = std::make_shared<const SymbolTable>(std::move(tokens));

    std::vector<std::vector<SymbolId>> rows;
    rows.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        std::vector<SymbolId> row(width);
        for (std::size_t k = 0; k < width; ++k) row[k] = *table->find(o[k]);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

    World w;
    w.variables_ = std::move(variables);
    w.table_ = std::move(table);
    w.data_.reserve(rows.size() * width);
    for (const auto& row : rows)
        w.data_.insert(w.data_.end(), row.begin(), row.end());
    return w;
}

SymbolTuple World::row_tokens(std::size_t i) const {
    SymbolTuple out(width());
    auto r = row(i);
    for (std::size_t k = 0; k < width(); ++k) out[k] = table_->token(r[k]);
    return out;
}

std::vector<std::size_t> World::resolve(const std::vector<VariableName>& vars) const {
    if (vars.empty()) throw ValidationError("empty variable subset");
    std::vector<std::size_t> idx;
    idx.reserve(vars.size());
    for (const auto& v : vars) {
        auto it = std::find(variables_.begin(), variables_.end(), v);
        if (it == variables_.end())
            throw ValidationError("unknown variable '" + v + "'");
        idx.push_back(static_cast<std::size_t>(it - variables_.begin()));
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw ValidationError("variable repeated within subset");
    return idx;
}

Range marginal_range(const World& w, const std::vector<VariableName>& vars) {
    auto idx = w.resolve(vars);
    std::vector<std::vector<SymbolId>> rows;
    rows.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        rows.push_back(project(w.row(i), idx));
    return Range::from_rows(pick_names(w.variables(), idx), w.symbols(),
                            std::move(rows));
}

namespace {

// Resolves an assignment to (column index, symbol id) pairs in declaration
// order. Unknown tokens make the condition inadmissible by definition.
std::optional<std::vector<std::pair<std::size_t, SymbolId>>>
resolve_assignment(const World& w, const Assignment& a) {
    if (a.variables.size() != a.values.size())
        throw ValidationError("assignment variable/value count mismatch");
    auto idx = w.resolve(a.variables);
    // match values to sorted indices
    std::vector<std::pair<std::size_t, SymbolId>> out;
    out.reserve(idx.size());
    for (std::size_t k = 0; k < a.variables.size(); ++k) {
        auto it = std::find(w.variables().begin(), w.variables().end(), a.variables[k]);
        std::size_t col = static_cast<std::size_t>(it - w.variables().begin());
        auto id = w.symbols()->find(a.values[k]);
        if (!id) return std::nullopt;
        out.emplace_back(col, *id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool row_matches(std::span<const SymbolId> row,
                 const std::vector<std::pair<std::size_t, SymbolId>>& cond) {
    for (const auto& [col, id] : cond)
        if (row[col] != id) return false;
    return true;
}

} // namespace

Range conditional_range(const World& w, const std::vector<VariableName>& target,
                        const Assignment& cond) {
    auto tidx = w.resolve(target);
    auto resolved = resolve_assignment(w, cond);
    if (!resolved) throw ValidationError("inadmissible condition");
    std::vector<std::vector<SymbolId>> rows;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!row_matches(w.row(i), *resolved)) continue;
        rows.push_back(project(w.row(i), tidx));
    }
    if (rows.empty()) throw ValidationError("inadmissible condition");
    return Range::from_rows(pick_names(w.variables(), tidx), w.symbols(),
                            std::move(rows));
}

ConditionalRangeFamily conditional_family(const World& w,
                                          const std::vector<VariableName>& target,
                                          const std::vector<VariableName>& conditioner) {
    auto tidx = w.resolve(target);
    auto cidx = w.resolve(conditioner);
    require_disjoint(tidx, cidx, "target and conditioner subsets overlap");

    Range cond_range = marginal_range(w, conditioner);
    // group target projections by conditioner point index
    std::vector<std::vector<std::vector<SymbolId>>> buckets(cond_range.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto crow = project(w.row(i), cidx);
        auto ci = cond_range.index_of(crow);
        buckets[*ci].push_back(project(w.row(i), tidx));
    }
    std::vector<ConditionalRangeFamily::Entry> entries;
    entries.reserve(cond_range.size());
    auto target_names = pick_names(w.variables(), tidx);
    for (std::size_t ci = 0; ci < cond_range.size(); ++ci) {
        entries.push_back({cond_range.row_tokens(ci),
                           Range::from_rows(target_names, w.symbols(),
                                            std::move(buckets[ci]))});
    }
    return ConditionalRangeFamily(target_names,
                                  pick_names(w.variables(), cidx),
                                  std::move(entries));
}

bool is_unrelated(const World& w, const std::vector<std::vector<VariableName>>& groups) {
    if (groups.size() < 2)
        throw ValidationError("unrelatedness needs at least two groups");
    std::vector<std::vector<std::size_t>> idx;
    std::vector<VariableName> all;
    for (const auto& g : groups) {
        idx.push_back(w.resolve(g));
        all.insert(all.end(), g.begin(), g.end());
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            require_disjoint(idx[i], idx[j], "groups overlap");

    unsigned __int128 product = 1;
    for (const auto& g : groups) {
        product *= marginal_range(w, g).size();
        if (product > w.size()) return false; // joint range cannot be larger
    }
    Range joint = marginal_range(w, all);
    return static_cast<unsigned __int128>(joint.size()) == product;
}

bool is_markov(const World& w, const std::vector<VariableName>& left,
               const std::vector<VariableName>& mid,
               const std::vector<VariableName>& right) {
    auto lidx = w.resolve(left);
    auto midx = w.resolve(mid);
    auto ridx = w.resolve(right);
    require_disjoint(lidx, midx, "subsets overlap");
    require_disjoint(lidx, ridx, "subsets overlap");
    require_disjoint(midx, ridx, "subsets overlap");

    Range mid_range = marginal_range(w, mid);
    Range left_range = marginal_range(w, left);

    // left-range index sets, keyed by mid point and by (mid, right) point
    std::vector<std::set<std::size_t>> by_mid(mid_range.size());
    std::map<std::pair<std::size_t, std::vector<SymbolId>>, std::set<std::size_t>> by_mid_right;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        auto mi = *mid_range.index_of(project(row, midx));
        auto li = *left_range.index_of(project(row, lidx));
        by_mid[mi].insert(li);
        by_mid_right[{mi, project(row, ridx)}].insert(li);
    }
    for (const auto& [key, lset] : by_mid_right)
        if (lset != by_mid[key.first]) return false;
    return true;
}

} // namespace zemac
