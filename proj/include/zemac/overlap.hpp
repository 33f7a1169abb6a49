#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zemac/uv_core.hpp"

namespace zemac {

/// A nonstochastic information value. The cell count is exact; log2 is
/// applied only at presentation time.
struct InfoValue {
    std::uint64_t cells = 0;
    double bits() const { return std::log2(static_cast<double>(cells)); }
};

/// Disjoint labeled cells covering a ground range. Labels 0..k-1 follow the
/// order of each cell's lexicographically smallest member.
class Partition {
public:
    static Partition from_cell_assignment(Range ground,
                                          const std::vector<std::uint32_t>& cell_of);
    static Partition trivial(Range ground);

    const Range& ground() const { return ground_; }
    std::size_t cell_count() const { return cells_.size(); }
    std::uint32_t label_of(std::size_t point_index) const { return cell_of_[point_index]; }
    /// label -> ascending point indices into ground().
    const std::vector<std::vector<std::uint32_t>>& cells() const { return cells_; }

    bool operator==(const Partition& other) const {
        return ground_ == other.ground_ && cell_of_ == other.cell_of_;
    }

private:
    Range ground_;
    std::vector<std::uint32_t> cell_of_;
    std::vector<std::vector<std::uint32_t>> cells_;
};

/// The [[target | conditioner]] overlap partition: connected components of
/// the hypergraph on [[target]] whose hyperedges are the conditional ranges.
Partition overlap_partition(const World& w, const std::vector<VariableName>& target,
                            const std::vector<VariableName>& conditioner);

/// I*[a;b] = log2 of the overlap-partition cell count.
InfoValue nonstochastic_info(const World& w, const std::vector<VariableName>& a,
                             const std::vector<VariableName>& b);

/// Label of the unique [[target|conditioner]]*-cell containing every target
/// point admissible with y.
std::uint32_t matching_cell(const World& w, const std::vector<VariableName>& target,
                            const std::vector<VariableName>& conditioner,
                            const SymbolTuple& y);

/// A value computable as a function of either variable group: labels with
/// f over [[a]] and g over [[b]] agreeing on every admissible pair.
struct CommonVariable {
    Range domain_a;
    Range domain_b;
    std::uint32_t label_count = 0;
    std::vector<std::uint32_t> f; // index into domain_a -> label
    std::vector<std::uint32_t> g; // index into domain_b -> label
};

CommonVariable maximal_cv(const World& w, const std::vector<VariableName>& a,
                          const std::vector<VariableName>& b);

/// h with z = h(z_star), or nullopt when no such function exists.
std::optional<std::vector<std::uint32_t>> factor_through(const CommonVariable& z_star,
                                                         const CommonVariable& z);

/// Overlap partition of [[target | given]] induced by the conditional
/// ranges [[target | y, given]].
Partition conditional_overlap_partition(const World& w,
                                        const std::vector<VariableName>& target,
                                        const std::vector<VariableName>& conditioner,
                                        const Assignment& given);

/// I*[a;b|c] = min over realized c-points of the conditional cell count.
InfoValue conditional_info(const World& w, const std::vector<VariableName>& a,
                           const std::vector<VariableName>& b,
                           const std::vector<VariableName>& c);

/// Common refinement: all nonempty pairwise cell intersections.
Partition partition_join(const Partition& p, const Partition& q);

/// Partition of [[x1, x2, y]] into noncooperative-connectedness classes:
/// two triples are equivalent when their x1 components share an
/// [[x1|y]]*-cell and their x2 components share an [[x2|y]]*-cell.
Partition nc_partition(const World& w, const std::vector<VariableName>& x1,
                       const std::vector<VariableName>& x2,
                       const std::vector<VariableName>& y);

/// log2 cell count of [[y|x1]]* v [[y|x2]]*.
InfoValue nc_info(const World& w, const std::vector<VariableName>& x1,
                  const std::vector<VariableName>& x2,
                  const std::vector<VariableName>& y);

/// Three-agent common variable (f1(X1), f2(X2)) = g(Y).
struct NCCommonVariable {
    Range domain_x1;
    Range domain_x2;
    Range domain_y;
    std::vector<std::uint32_t> f1; // index into domain_x1 -> x1 component label
    std::vector<std::uint32_t> f2;
    /// Attained (f1, f2) label pairs in ascending order; these are the values.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> labels;
    std::vector<std::uint32_t> g; // index into domain_y -> index into labels
    std::uint32_t label_count() const { return static_cast<std::uint32_t>(labels.size()); }
};

NCCommonVariable nc_maximal_cv(const World& w, const std::vector<VariableName>& x1,
                               const std::vector<VariableName>& x2,
                               const std::vector<VariableName>& y);

} // namespace zemac
