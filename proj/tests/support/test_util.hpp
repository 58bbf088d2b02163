#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "edmselect/classifiers.hpp"
#include "edmselect/dataset.hpp"
#include "edmselect/rng.hpp"

#ifndef EDMSELECT_FIXTURE_DIR
#define EDMSELECT_FIXTURE_DIR "tests/fixtures"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(EDMSELECT_FIXTURE_DIR) + "/" + name;
}

inline edmselect::Dataset load_fixture(const std::string& name) {
    return edmselect::load_dataset(fixture_path(name));
}

inline edmselect::Dataset parse_csv_string(const std::string& text) {
    std::istringstream in(text);
    return edmselect::parse_table(in, edmselect::TableFormat::Csv);
}

// Small dataset builder for hand-written fixtures: schemas from arities,
// rows from integer cells (-1 = missing).
inline edmselect::Dataset make_dataset(const std::vector<int>& arities,
                                       const std::vector<std::vector<int32_t>>& rows,
                                       int positive_class = 0) {
    edmselect::Dataset d;
    for (std::size_t a = 0; a < arities.size(); ++a) {
        edmselect::AttributeSchema s;
        s.name = "a" + std::to_string(a);
        s.index = static_cast<int>(a);
        for (int v = 0; v < arities[a]; ++v) s.values.push_back("v" + std::to_string(v));
        d.schema.push_back(std::move(s));
    }
    d.schema.back().name = "class";
    d.rows = rows;
    d.class_index = static_cast<int>(arities.size()) - 1;
    d.positive_class = positive_class;
    d.validate();
    return d;
}

// Random nominal dataset; class is the last attribute and never missing.
inline edmselect::Dataset random_dataset(std::mt19937_64& gen, int max_rows = 12,
                                         int max_predictors = 4, int max_arity = 3,
                                         int max_classes = 3, double missing_rate = 0.1) {
    using edmselect::uniform_index;
    int n_rows = 1 + static_cast<int>(uniform_index(gen, static_cast<std::size_t>(max_rows)));
    int n_preds =
        1 + static_cast<int>(uniform_index(gen, static_cast<std::size_t>(max_predictors)));
    int n_classes = 2 + static_cast<int>(uniform_index(
                            gen, static_cast<std::size_t>(max_classes - 1)));
    std::vector<int> arities;
    for (int p = 0; p < n_preds; ++p) {
        arities.push_back(1 +
                          static_cast<int>(uniform_index(gen, static_cast<std::size_t>(max_arity))));
    }
    arities.push_back(n_classes);
    std::vector<std::vector<int32_t>> rows;
    for (int r = 0; r < n_rows; ++r) {
        std::vector<int32_t> row;
        for (int p = 0; p < n_preds; ++p) {
            if (edmselect::uniform01(gen) < missing_rate) {
                row.push_back(edmselect::kMissing);
            } else {
                row.push_back(static_cast<int32_t>(
                    uniform_index(gen, static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]))));
            }
        }
        row.push_back(static_cast<int32_t>(
            uniform_index(gen, static_cast<std::size_t>(n_classes))));
        rows.push_back(std::move(row));
    }
    return make_dataset(arities, rows);
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Test-only learner: constant majority-class prediction.
class MajorityClassifier : public edmselect::Classifier {
public:
    std::string name() const override { return "Majority"; }
    std::unique_ptr<edmselect::Predictor> train(const edmselect::Dataset& d) const override {
        auto counts = d.class_counts();
        int best = 0;
        for (int c = 1; c < static_cast<int>(counts.size()); ++c) {
            if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
                best = c;
            }
        }
        class P : public edmselect::Predictor {
        public:
            P(int cls, std::size_t n) : cls_(cls), n_(n) {}
            edmselect::PredictionDistribution predict(std::span<const int32_t>) const override {
                edmselect::PredictionDistribution dist;
                dist.probs.assign(n_, 0.0);
                dist.probs[static_cast<std::size_t>(cls_)] = 1.0;
                return dist;
            }

        private:
            int cls_;
            std::size_t n_;
        };
        return std::make_unique<P>(best, counts.size());
    }
};

}  // namespace testutil
