#pragma once

#include <cstdint>
#include <vector>

#include "edmselect/dataset.hpp"

namespace edmselect {

// Attribute-value x class-value count matrix with marginals. Rows cover
// the attribute's declared values (zero rows retained) plus a trailing
// missing bucket iff the attribute has missing cells.
struct ContingencyTable {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<int64_t> counts;  // row-major, n_rows * n_cols
    std::vector<int64_t> row_sums;
    std::vector<int64_t> col_sums;
    int64_t total = 0;

    int64_t at(std::size_t r, std::size_t c) const { return counts[r * n_cols + c]; }
    int64_t& at(std::size_t r, std::size_t c) { return counts[r * n_cols + c]; }

    static ContingencyTable from_counts(std::size_t rows, std::size_t cols,
                                        std::vector<int64_t> counts);
    ContingencyTable transposed() const;
};

// Cross-tabulates a predictor against the class attribute.
ContingencyTable contingency(const Dataset& d, int attr);

// Cross-tabulates two predictors (used for pairwise correlation). Both
// sides follow the same missing-bucket rule as contingency().
ContingencyTable cross_tab(const Dataset& d, int attr_a, int attr_b);

}  // namespace edmselect
