#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edmselect/errors.hpp"

namespace edmselect {

// Cell value for a missing nominal response. Missing responses are kept
// distinct from declared categories; operations that follow the
// missing-as-value convention give them their own trailing bucket.
inline constexpr int32_t kMissing = -1;

struct AttributeSchema {
    std::string name;
    std::vector<std::string> values;  // distinct, declared/first-appearance order
    int index = 0;                    // position in the dataset schema

    // -1 when the label is not a declared value.
    int value_index(const std::string& label) const;
};

// Nominal dataset: every cell is a category index into its attribute's
// value list, or kMissing. Immutable after construction by convention.
struct Dataset {
    std::vector<AttributeSchema> schema;
    std::vector<std::vector<int32_t>> rows;
    int class_index = 0;
    int positive_class = 0;  // category index within the class attribute, used for ROC

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_attributes() const { return schema.size(); }
    std::size_t n_predictors() const { return schema.empty() ? 0 : schema.size() - 1; }
    std::size_t n_class_values() const {
        return schema[static_cast<std::size_t>(class_index)].values.size();
    }
    const AttributeSchema& class_attribute() const {
        return schema[static_cast<std::size_t>(class_index)];
    }
    int32_t class_of(std::size_t row) const {
        return rows[row][static_cast<std::size_t>(class_index)];
    }
    std::vector<int> predictor_indices() const;
    bool has_missing(int attr) const;

    // Number of categories an operation under missing-as-value sees for
    // `attr`: declared values plus one trailing bucket iff the attribute
    // has missing cells in this dataset.
    int category_count(int attr) const;

    // Maps a cell to its category under missing-as-value. Missing cells
    // map to the trailing bucket (= values count).
    int32_t category_of(std::size_t row, int attr) const;

    int attribute_index(const std::string& name) const;  // -1 when absent
    std::vector<int64_t> class_counts() const;

    // Throws ArgumentError if any structural invariant is violated.
    void validate() const;
};

enum class TableFormat { Csv, ArffSubset };

// Parses a nominal table. CSV: first line is the header, "?" marks a
// missing cell. ARFF: the nominal-attribute subset only ("@attribute
// name {a,b,c}"); numeric/string/date declarations are rejected.
// The class attribute defaults to the last column.
Dataset parse_table(std::istream& in, TableFormat format);

// Convenience wrapper: format chosen from the file extension (.arff vs
// anything else = csv). Optionally re-points the class attribute and the
// positive class label after parsing.
Dataset load_dataset(const std::string& path,
                     const std::string& class_attribute = "",
                     const std::string& positive_label = "");

// Re-point the class attribute / positive label by name (in place).
void set_class_attribute(Dataset& d, const std::string& name);
void set_positive_label(Dataset& d, const std::string& label);

void write_csv(const Dataset& d, std::ostream& out);
void write_csv_file(const Dataset& d, const std::string& path);

// New dataset containing exactly the chosen predictors (in the given
// order) followed by the class attribute. Row order preserved.
Dataset project(const Dataset& d, const std::vector<int>& predictors);

struct FoldAssignment {
    int n_folds = 0;
    std::vector<int> labels;  // per-row fold id in [0, n_folds)
};

// Deterministic stratified partition: per-class round-robin deal over a
// seeded shuffle. Fold sizes and per-fold class counts are within one
// instance of proportional.
FoldAssignment stratified_folds(const Dataset& d, int n_folds, uint64_t seed);

struct EncodedMatrix {
    std::size_t n_cols = 0;
    std::vector<std::vector<double>> rows;  // one-hot blocks, entries in {0,1}
    std::vector<int> labels;                // +1 positive class, -1 otherwise
    std::vector<std::size_t> block_offset;  // per predictor, column of its first value
    std::vector<int> block_arity;           // per predictor, declared value count

    std::size_t column_of(std::size_t predictor_pos, int value) const {
        return block_offset[predictor_pos] + static_cast<std::size_t>(value);
    }
};

// One-hot expansion of the predictors; missing cells become an all-zero
// block. Requires a binary class attribute.
EncodedMatrix one_hot_encode(const Dataset& d);

}  // namespace edmselect
