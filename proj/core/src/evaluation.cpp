#include "edmselect/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace edmselect {

int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), int64_t{0});
}

int64_t ConfusionMatrix::trace() const {
    int64_t t = 0;
    for (int c = 0; c < n_classes; ++c) t += at(c, c);
    return t;
}

ConfusionMatrix confusion(const std::vector<int>& preds, const std::vector<int>& truth,
                          int n_classes) {
    if (preds.size() != truth.size()) throw ArgumentError("confusion: length mismatch");
    if (preds.empty()) throw ArgumentError("confusion: empty input");
    ConfusionMatrix cm;
    cm.n_classes = n_classes;
    cm.counts.assign(static_cast<std::size_t>(n_classes) * n_classes, 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        ++cm.counts[static_cast<std::size_t>(truth[i]) * n_classes +
                    static_cast<std::size_t>(preds[i])];
    }
    return cm;
}

double macro_f1(const ConfusionMatrix& cm) {
    double sum = 0.0;
    for (int c = 0; c < cm.n_classes; ++c) {
        int64_t tp = cm.at(c, c);
        int64_t fp = 0, fn = 0;
        for (int o = 0; o < cm.n_classes; ++o) {
            if (o == c) continue;
            fp += cm.at(o, c);
            fn += cm.at(c, o);
        }
        double precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        double recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        double f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                               : 0.0;
        sum += f1;
    }
    return sum / cm.n_classes;
}

double accuracy(const ConfusionMatrix& cm) {
    int64_t n = cm.total();
    return n > 0 ? static_cast<double>(cm.trace()) / static_cast<double>(n) : 0.0;
}

double roc_value(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw ArgumentError("roc_value: length mismatch");
    int64_t n_pos = 0, n_neg = 0;
    for (int l : labels) (l > 0 ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) {
        throw UndefinedMetricError("roc_value needs both a positive and a negative instance");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    // midranks over tied scores
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] > 0) pos_rank_sum += midrank;
        }
        i = j + 1;
    }
    double np = static_cast<double>(n_pos);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double rmse(const std::vector<PredictionDistribution>& dists, const std::vector<int>& truth,
            int n_classes) {
    if (dists.size() != truth.size()) throw ArgumentError("rmse: length mismatch");
    if (dists.empty()) throw ArgumentError("rmse: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < dists.size(); ++i) {
        for (int c = 0; c < n_classes; ++c) {
            double y = truth[i] == c ? 1.0 : 0.0;
            double diff = dists[i].probs[static_cast<std::size_t>(c)] - y;
            sum += diff * diff;
        }
    }
    return std::sqrt(sum / (static_cast<double>(dists.size()) * n_classes));
}

namespace {

MetricBundle compute_bundle(const std::vector<PredictionDistribution>& dists,
                            const std::vector<int>& truth, int n_classes, int positive_class,
                            bool binary) {
    MetricBundle b;
    std::vector<int> preds(dists.size());
    for (std::size_t i = 0; i < dists.size(); ++i) preds[i] = dists[i].argmax();
    auto cm = confusion(preds, truth, n_classes);
    b.accuracy = accuracy(cm);
    b.macro_f1 = macro_f1(cm);
    b.rmse = rmse(dists, truth, n_classes);
    if (binary) {
        std::vector<double> scores(dists.size());
        std::vector<int> labels(dists.size());
        for (std::size_t i = 0; i < dists.size(); ++i) {
            scores[i] = dists[i].probs[static_cast<std::size_t>(positive_class)];
            labels[i] = truth[i] == positive_class ? 1 : -1;
        }
        try {
            b.roc_value = roc_value(scores, labels);
        } catch (const UndefinedMetricError&) {
            b.roc_value = std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        b.roc_value = std::numeric_limits<double>::quiet_NaN();
    }
    return b;
}

}  // namespace

CrossValResult cross_validate(const Dataset& d, const Classifier& clf,
                              const FoldAssignment& folds) {
    if (folds.labels.size() != d.n_rows()) throw ArgumentError("fold assignment size mismatch");
    if (folds.n_folds < 2) throw ArgumentError("need at least 2 folds");
    for (int f : folds.labels) {
        if (f < 0 || f >= folds.n_folds) throw ArgumentError("fold label out of range");
    }
    auto n_classes = static_cast<int>(d.n_class_values());
    bool binary = n_classes == 2;

    CrossValResult result;
    std::vector<PredictionDistribution> pooled_dists(d.n_rows());
    std::vector<bool> scored(d.n_rows(), false);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int f = 0; f < folds.n_folds; ++f) {
        Dataset train;
        train.schema = d.schema;
        train.class_index = d.class_index;
        train.positive_class = d.positive_class;
        std::vector<std::size_t> test_rows;
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            if (folds.labels[r] == f) {
                test_rows.push_back(r);
            } else {
                train.rows.push_back(d.rows[r]);
            }
        }
        std::vector<int64_t> train_counts = train.rows.empty()
                                                ? std::vector<int64_t>(n_classes, 0)
                                                : train.class_counts();
        bool complete = true;
        for (int c = 0; c < n_classes; ++c) {
            if (train_counts[static_cast<std::size_t>(c)] == 0) complete = false;
        }
        if (!complete || test_rows.empty()) {
            result.skipped_folds.push_back(f);
            result.warnings.push_back("fold " + std::to_string(f) +
                                      " skipped: training split lacks a class value");
            result.per_fold.push_back({nan, nan, nan, nan});
            continue;
        }
        auto predictor = clf.train(train);
        std::vector<PredictionDistribution> fold_dists;
        std::vector<int> fold_truth;
        fold_dists.reserve(test_rows.size());
        for (std::size_t r : test_rows) {
            auto dist = predictor->predict(d.rows[r]);
            pooled_dists[r] = dist;
            scored[r] = true;
            fold_dists.push_back(std::move(dist));
            fold_truth.push_back(static_cast<int>(d.class_of(r)));
        }
        result.per_fold.push_back(
            compute_bundle(fold_dists, fold_truth, n_classes, d.positive_class, binary));
    }

    std::vector<PredictionDistribution> dists;
    std::vector<int> truth;
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        if (!scored[r]) continue;
        dists.push_back(std::move(pooled_dists[r]));
        truth.push_back(static_cast<int>(d.class_of(r)));
    }
    if (dists.empty()) {
        throw UndefinedMetricError("cross_validate: every fold was skipped");
    }
    result.pooled = compute_bundle(dists, truth, n_classes, d.positive_class, binary);
    return result;
}

}  // namespace edmselect
