#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edmselect/classifiers.hpp"
#include "edmselect/dataset.hpp"

namespace edmselect {

struct ConfusionMatrix {
    int n_classes = 0;
    std::vector<int64_t> counts;  // [true * n_classes + predicted]

    int64_t at(int truth, int pred) const { return counts[truth * n_classes + pred]; }
    int64_t total() const;
    int64_t trace() const;
};

ConfusionMatrix confusion(const std::vector<int>& preds, const std::vector<int>& truth,
                          int n_classes);

// Unweighted mean over class values of 2PR/(P+R); every 0/0 counts as 0.
double macro_f1(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);

// AUC by rank statistic with midrank tie handling. Throws
// UndefinedMetricError unless both a positive and a negative are present.
double roc_value(const std::vector<double>& scores, const std::vector<int>& labels);

// sqrt( mean over instances and classes of (p - onehot)^2 ); in [0,1].
double rmse(const std::vector<PredictionDistribution>& dists, const std::vector<int>& truth,
            int n_classes);

struct MetricBundle {
    double roc_value = 0.0;  // NaN when undefined (non-binary class)
    double macro_f1 = 0.0;
    double accuracy = 0.0;
    double rmse = 0.0;
};

struct CrossValResult {
    MetricBundle pooled;
    std::vector<MetricBundle> per_fold;  // skipped folds hold NaN bundles
    std::vector<int> skipped_folds;
    std::vector<std::string> warnings;
};

// Per fold: train on the out-of-fold rows, score the in-fold rows. All
// out-of-fold predictions are pooled (in row order) and each metric is
// computed once on the pool. A fold whose training split lacks a class
// value is skipped with a warning.
CrossValResult cross_validate(const Dataset& d, const Classifier& clf,
                              const FoldAssignment& folds);

}  // namespace edmselect
