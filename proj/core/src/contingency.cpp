#include "edmselect/contingency.hpp"

#include <numeric>

namespace edmselect {

ContingencyTable ContingencyTable::from_counts(std::size_t rows, std::size_t cols,
                                               std::vector<int64_t> counts) {
    if (counts.size() != rows * cols) throw ArgumentError("contingency counts size mismatch");
    for (int64_t c : counts) {
        if (c < 0) throw ArgumentError("negative contingency count");
    }
    ContingencyTable t;
    t.n_rows = rows;
    t.n_cols = cols;
    t.counts = std::move(counts);
    t.row_sums.assign(rows, 0);
    t.col_sums.assign(cols, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            int64_t v = t.at(r, c);
            t.row_sums[r] += v;
            t.col_sums[c] += v;
            t.total += v;
        }
    }
    return t;
}

ContingencyTable ContingencyTable::transposed() const {
    std::vector<int64_t> out(counts.size());
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            out[c * n_rows + r] = at(r, c);
        }
    }
    return from_counts(n_cols, n_rows, std::move(out));
}

ContingencyTable contingency(const Dataset& d, int attr) {
    if (attr == d.class_index) throw ArgumentError("contingency of the class attribute");
    if (attr < 0 || attr >= static_cast<int>(d.n_attributes())) {
        throw ArgumentError("attribute index out of range");
    }
    std::size_t rows = static_cast<std::size_t>(d.category_count(attr));
    std::size_t cols = d.n_class_values();
    std::vector<int64_t> counts(rows * cols, 0);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        auto v = static_cast<std::size_t>(d.category_of(r, attr));
        auto c = static_cast<std::size_t>(d.class_of(r));
        ++counts[v * cols + c];
    }
    return ContingencyTable::from_counts(rows, cols, std::move(counts));
}

ContingencyTable cross_tab(const Dataset& d, int attr_a, int attr_b) {
    for (int a : {attr_a, attr_b}) {
        if (a < 0 || a >= static_cast<int>(d.n_attributes())) {
            throw ArgumentError("attribute index out of range");
        }
    }
    std::size_t rows = static_cast<std::size_t>(d.category_count(attr_a));
    std::size_t cols = static_cast<std::size_t>(d.category_count(attr_b));
    std::vector<int64_t> counts(rows * cols, 0);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        auto va = static_cast<std::size_t>(d.category_of(r, attr_a));
        auto vb = static_cast<std::size_t>(d.category_of(r, attr_b));
        ++counts[va * cols + vb];
    }
    return ContingencyTable::from_counts(rows, cols, std::move(counts));
}

}  // namespace edmselect
