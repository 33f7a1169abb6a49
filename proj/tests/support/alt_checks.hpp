#pragma once

#include "zemac/uv_core.hpp"

namespace zemac::testing {

/// Unrelatedness via the chained conditional-range identity:
/// [[G_k | g_1..g_{k-1}]] == [[G_k]] for every realized prefix. Independent
/// of the Cartesian-product test used in production.
inline bool unrelated_by_conditional_ranges(const World& w,
                                            const std::vector<std::vector<VariableName>>& groups) {
    std::vector<VariableName> prefix = groups.front();
    for (std::size_t k = 1; k < groups.size(); ++k) {
        Range prefix_range = marginal_range(w, prefix);
        Range gk = marginal_range(w, groups[k]);
        for (std::size_t i = 0; i < prefix_range.size(); ++i) {
            Assignment cond{prefix_range.variables(), prefix_range.row_tokens(i)};
            if (!(conditional_range(w, groups[k], cond) == gk)) return false;
        }
        prefix.insert(prefix.end(), groups[k].begin(), groups[k].end());
    }
    return true;
}

/// Markovianity via conditional unrelatedness given the middle:
/// [[L, R | y]] == [[L | y]] x [[R | y]] for every realized y.
inline bool markov_by_conditional_unrelatedness(const World& w,
                                                const std::vector<VariableName>& left,
                                                const std::vector<VariableName>& mid,
                                                const std::vector<VariableName>& right) {
    Range mids = marginal_range(w, mid);
    std::vector<VariableName> both = left;
    both.insert(both.end(), right.begin(), right.end());
    for (std::size_t i = 0; i < mids.size(); ++i) {
        Assignment cond{mids.variables(), mids.row_tokens(i)};
        const std::size_t joint = conditional_range(w, both, cond).size();
        const std::size_t l = conditional_range(w, left, cond).size();
        const std::size_t r = conditional_range(w, right, cond).size();
        // the joint conditional range is always contained in the product
        if (joint != l * r) return false;
    }
    return true;
}

} // namespace zemac::testing
