#include "zemac/overlap.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zemac {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            std::uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    void merge(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

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

Partition components_to_partition(Range ground, UnionFind& uf) {
    std::vector<std::uint32_t> roots(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i)
        roots[i] = uf.find(static_cast<std::uint32_t>(i));
    return Partition::from_cell_assignment(std::move(ground), roots);
}

// Shared core: overlap components of `ground_rows` (projections of the rows
// selected by `filter`) seeded by the conditioner projections.
Partition overlap_components(const World& w, const std::vector<std::size_t>& tidx,
                             const std::vector<std::size_t>& cidx,
                             const std::vector<std::pair<std::size_t, SymbolId>>& filter) {
    auto matches = [&](std::span<const SymbolId> row) {
        for (const auto& [col, id] : filter)
            if (row[col] != id) return false;
        return true;
    };

    std::vector<std::vector<SymbolId>> ground_rows;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (matches(w.row(i))) ground_rows.push_back(project(w.row(i), tidx));
    if (ground_rows.empty()) throw ValidationError("inadmissible condition");
    Range ground = Range::from_rows(pick_names(w.variables(), tidx), w.symbols(),
                                    std::move(ground_rows));

    UnionFind uf(ground.size());
    std::map<std::vector<SymbolId>, std::uint32_t> anchor;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        if (!matches(row)) continue;
        auto ti = static_cast<std::uint32_t>(*ground.index_of(project(row, tidx)));
        auto [it, inserted] = anchor.emplace(project(row, cidx), ti);
        if (!inserted) uf.merge(it->second, ti);
    }
    return components_to_partition(std::move(ground), uf);
}

std::vector<std::pair<std::size_t, SymbolId>>
resolve_given(const World& w, const Assignment& given) {
    if (given.variables.size() != given.values.size())
        throw ValidationError("assignment variable/value count mismatch");
    auto idx = w.resolve(given.variables);
    std::vector<std::pair<std::size_t, SymbolId>> out;
    out.reserve(idx.size());
    for (std::size_t k = 0; k < given.variables.size(); ++k) {
        auto it = std::find(w.variables().begin(), w.variables().end(),
                            given.variables[k]);
        auto id = w.symbols()->find(given.values[k]);
        if (!id) throw ValidationError("inadmissible condition");
        out.emplace_back(static_cast<std::size_t>(it - w.variables().begin()), *id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Partition Partition::from_cell_assignment(Range ground,
                                          const std::vector<std::uint32_t>& cell_of) {
    if (cell_of.size() != ground.size())
        throw ValidationError("cell assignment size does not match ground");
    // canonical labels: order of first appearance == order of the smallest
    // member, because ground points are sorted
    std::map<std::uint32_t, std::uint32_t> relabel;
    std::vector<std::uint32_t> canonical(cell_of.size());
    for (std::size_t i = 0; i < cell_of.size(); ++i) {
        auto [it, inserted] = relabel.emplace(
            cell_of[i], static_cast<std::uint32_t>(relabel.size()));
        canonical[i] = it->second;
    }
    Partition p;
    p.cells_.resize(relabel.size());
    for (std::size_t i = 0; i < canonical.size(); ++i)
        p.cells_[canonical[i]].push_back(static_cast<std::uint32_t>(i));
    p.ground_ = std::move(ground);
    p.cell_of_ = std::move(canonical);
    return p;
}

Partition Partition::trivial(Range ground) {
    std::vector<std::uint32_t> zeros(ground.size(), 0u);
    return from_cell_assignment(std::move(ground), zeros);
}

Partition overlap_partition(const World& w, const std::vector<VariableName>& target,
                            const std::vector<VariableName>& conditioner) {
    auto tidx = w.resolve(target);
    auto cidx = w.resolve(conditioner);
    require_disjoint(tidx, cidx, "target and conditioner subsets overlap");
    return overlap_components(w, tidx, cidx, {});
}

InfoValue nonstochastic_info(const World& w, const std::vector<VariableName>& a,
                             const std::vector<VariableName>& b) {
    return {overlap_partition(w, a, b).cell_count()};
}

std::uint32_t matching_cell(const World& w, const std::vector<VariableName>& target,
                            const std::vector<VariableName>& conditioner,
                            const SymbolTuple& y) {
    Partition p = overlap_partition(w, target, conditioner);
    auto tidx = w.resolve(target);
    auto cidx = w.resolve(conditioner);
    if (y.size() != cidx.size())
        throw ValidationError("conditioner point arity mismatch");
    std::vector<SymbolId> yids(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        auto id = w.symbols()->find(y[k]);
        if (!id) throw ValidationError("inadmissible condition");
        yids[k] = *id;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        if (project(row, cidx) != yids) continue;
        return p.label_of(*p.ground().index_of(project(row, tidx)));
    }
    throw ValidationError("inadmissible condition");
}

CommonVariable maximal_cv(const World& w, const std::vector<VariableName>& a,
                          const std::vector<VariableName>& b) {
    Partition pa = overlap_partition(w, a, b);
    auto aidx = w.resolve(a);
    auto bidx = w.resolve(b);
    Range b_range = marginal_range(w, b);

    CommonVariable cv;
    cv.label_count = static_cast<std::uint32_t>(pa.cell_count());
    cv.f.resize(pa.ground().size());
    for (std::size_t i = 0; i < pa.ground().size(); ++i)
        cv.f[i] = pa.label_of(i);

    constexpr std::uint32_t kUnset = 0xffffffffu;
    cv.g.assign(b_range.size(), kUnset);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        auto bi = *b_range.index_of(project(row, bidx));
        auto label = pa.label_of(*pa.ground().index_of(project(row, aidx)));
        if (cv.g[bi] == kUnset) {
            cv.g[bi] = label;
        } else if (cv.g[bi] != label) {
            throw InternalCheckError("overlap partition labeling is not a common variable");
        }
    }
    cv.domain_a = pa.ground();
    cv.domain_b = std::move(b_range);
    return cv;
}

std::optional<std::vector<std::uint32_t>> factor_through(const CommonVariable& z_star,
                                                         const CommonVariable& z) {
    if (!(z_star.domain_a == z.domain_a) || !(z_star.domain_b == z.domain_b))
        throw ValidationError("common variables are defined over different domains");
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> h(z_star.label_count, kUnset);
    for (std::size_t i = 0; i < z_star.f.size(); ++i) {
        std::uint32_t& slot = h[z_star.f[i]];
        if (slot == kUnset) slot = z.f[i];
        else if (slot != z.f[i]) return std::nullopt;
    }
    for (std::size_t i = 0; i < z_star.g.size(); ++i) {
        std::uint32_t& slot = h[z_star.g[i]];
        if (slot == kUnset) slot = z.g[i];
        else if (slot != z.g[i]) return std::nullopt;
    }
    return h;
}

Partition conditional_overlap_partition(const World& w,
                                        const std::vector<VariableName>& target,
                                        const std::vector<VariableName>& conditioner,
                                        const Assignment& given) {
    auto tidx = w.resolve(target);
    auto cidx = w.resolve(conditioner);
    auto gidx = w.resolve(given.variables);
    require_disjoint(tidx, cidx, "target and conditioner subsets overlap");
    require_disjoint(tidx, gidx, "target and given subsets overlap");
    require_disjoint(cidx, gidx, "conditioner and given subsets overlap");
    return overlap_components(w, tidx, cidx, resolve_given(w, given));
}

InfoValue conditional_info(const World& w, const std::vector<VariableName>& a,
                           const std::vector<VariableName>& b,
                           const std::vector<VariableName>& c) {
    Range c_range = marginal_range(w, c);
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < c_range.size(); ++i) {
        Partition p = conditional_overlap_partition(w, a, b,
                                                    {c, c_range.row_tokens(i)});
        if (i == 0 || p.cell_count() < best) best = p.cell_count();
    }
    return {best};
}

Partition partition_join(const Partition& p, const Partition& q) {
    if (!(p.ground() == q.ground()))
        throw ValidationError("partition join requires identical grounds");
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pairs;
    std::vector<std::uint32_t> assignment(p.ground().size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        auto key = std::make_pair(p.label_of(i), q.label_of(i));
        auto [it, inserted] = pairs.emplace(key, static_cast<std::uint32_t>(pairs.size()));
        assignment[i] = it->second;
    }
    return Partition::from_cell_assignment(p.ground(), assignment);
}

Partition nc_partition(const World& w, const std::vector<VariableName>& x1,
                       const std::vector<VariableName>& x2,
                       const std::vector<VariableName>& y) {
    auto i1 = w.resolve(x1);
    auto i2 = w.resolve(x2);
    auto iy = w.resolve(y);
    require_disjoint(i1, i2, "subsets overlap");
    require_disjoint(i1, iy, "subsets overlap");
    require_disjoint(i2, iy, "subsets overlap");

    Partition p1 = overlap_partition(w, x1, y);
    Partition p2 = overlap_partition(w, x2, y);

    std::vector<VariableName> all;
    all.insert(all.end(), x1.begin(), x1.end());
    all.insert(all.end(), x2.begin(), x2.end());
    all.insert(all.end(), y.begin(), y.end());
    Range ground = marginal_range(w, all);

    std::vector<std::uint32_t> assignment(ground.size());
    // ground rows are laid out in world declaration order; recompute the
    // projection columns relative to the ground row layout
    std::vector<std::size_t> cols;
    {
        std::vector<std::size_t> merged = i1;
        merged.insert(merged.end(), i2.begin(), i2.end());
        merged.insert(merged.end(), iy.begin(), iy.end());
        std::sort(merged.begin(), merged.end());
        auto pos_of = [&](std::size_t col) {
            return static_cast<std::size_t>(
                std::lower_bound(merged.begin(), merged.end(), col) - merged.begin());
        };
        for (std::size_t c : i1) cols.push_back(pos_of(c));
        for (std::size_t c : i2) cols.push_back(pos_of(c));
    }
    for (std::size_t g = 0; g < ground.size(); ++g) {
        auto row = ground.row(g);
        std::vector<SymbolId> x1p, x2p;
        for (std::size_t k = 0; k < i1.size(); ++k) x1p.push_back(row[cols[k]]);
        for (std::size_t k = 0; k < i2.size(); ++k) x2p.push_back(row[cols[i1.size() + k]]);
        auto l1 = p1.label_of(*p1.ground().index_of(x1p));
        auto l2 = p2.label_of(*p2.ground().index_of(x2p));
        assignment[g] = l1 * static_cast<std::uint32_t>(p2.cell_count()) + l2;
    }
    return Partition::from_cell_assignment(std::move(ground), assignment);
}

InfoValue nc_info(const World& w, const std::vector<VariableName>& x1,
                  const std::vector<VariableName>& x2,
                  const std::vector<VariableName>& y) {
    Partition q1 = overlap_partition(w, y, x1);
    Partition q2 = overlap_partition(w, y, x2);
    return {partition_join(q1, q2).cell_count()};
}

NCCommonVariable nc_maximal_cv(const World& w, const std::vector<VariableName>& x1,
                               const std::vector<VariableName>& x2,
                               const std::vector<VariableName>& y) {
    Partition p1 = overlap_partition(w, x1, y);
    Partition p2 = overlap_partition(w, x2, y);
    auto i1 = w.resolve(x1);
    auto i2 = w.resolve(x2);
    auto iy = w.resolve(y);
    Range y_range = marginal_range(w, y);

    NCCommonVariable cv;
    cv.f1.resize(p1.ground().size());
    for (std::size_t i = 0; i < cv.f1.size(); ++i) cv.f1[i] = p1.label_of(i);
    cv.f2.resize(p2.ground().size());
    for (std::size_t i = 0; i < cv.f2.size(); ++i) cv.f2[i] = p2.label_of(i);

    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> per_y(
        y_range.size(), {kUnset, kUnset});
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto row = w.row(i);
        auto yi = *y_range.index_of(project(row, iy));
        auto l1 = p1.label_of(*p1.ground().index_of(project(row, i1)));
        auto l2 = p2.label_of(*p2.ground().index_of(project(row, i2)));
        if (per_y[yi].first == kUnset) {
            per_y[yi] = {l1, l2};
        } else if (per_y[yi] != std::make_pair(l1, l2)) {
            throw InternalCheckError("NC labeling is not a function of y");
        }
    }
    cv.labels = per_y;
    std::sort(cv.labels.begin(), cv.labels.end());
    cv.labels.erase(std::unique(cv.labels.begin(), cv.labels.end()), cv.labels.end());
    cv.g.resize(y_range.size());
    for (std::size_t i = 0; i < y_range.size(); ++i) {
        auto it = std::lower_bound(cv.labels.begin(), cv.labels.end(), per_y[i]);
        cv.g[i] = static_cast<std::uint32_t>(it - cv.labels.begin());
    }
    cv.domain_x1 = p1.ground();
    cv.domain_x2 = p2.ground();
    cv.domain_y = std::move(y_range);
    return cv;
}

} // namespace zemac
