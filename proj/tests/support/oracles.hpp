#pragma once

// Independent brute-force reference implementations. These deliberately
// take different arithmetic routes than the library (mutual information
// instead of conditional entropies, direct products instead of log space,
// pairwise counting instead of rank statistics) so agreement is meaningful.

#include <cmath>
#include <cstdint>
#include <vector>

#include "edmselect/contingency.hpp"
#include "edmselect/dataset.hpp"

namespace oracle {

inline double entropy_bits(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

inline std::vector<double> row_marginal(const edmselect::ContingencyTable& t) {
    std::vector<double> p(t.n_rows);
    for (std::size_t r = 0; r < t.n_rows; ++r) {
        p[r] = t.total ? static_cast<double>(t.row_sums[r]) / t.total : 0.0;
    }
    return p;
}

inline std::vector<double> col_marginal(const edmselect::ContingencyTable& t) {
    std::vector<double> p(t.n_cols);
    for (std::size_t c = 0; c < t.n_cols; ++c) {
        p[c] = t.total ? static_cast<double>(t.col_sums[c]) / t.total : 0.0;
    }
    return p;
}

// IG as mutual information over the joint distribution.
inline double info_gain(const edmselect::ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    double mi = 0.0;
    double n = static_cast<double>(t.total);
    for (std::size_t r = 0; r < t.n_rows; ++r) {
        for (std::size_t c = 0; c < t.n_cols; ++c) {
            double joint = static_cast<double>(t.at(r, c)) / n;
            if (joint <= 0.0) continue;
            double pr = static_cast<double>(t.row_sums[r]) / n;
            double pc = static_cast<double>(t.col_sums[c]) / n;
            mi += joint * std::log2(joint / (pr * pc));
        }
    }
    return mi < 0.0 ? 0.0 : mi;
}

inline double gain_ratio(const edmselect::ContingencyTable& t) {
    double h = entropy_bits(row_marginal(t));
    return h > 0.0 ? info_gain(t) / h : 0.0;
}

inline double symmetrical_uncertainty(const edmselect::ContingencyTable& t) {
    double denom = entropy_bits(row_marginal(t)) + entropy_bits(col_marginal(t));
    return denom > 0.0 ? 2.0 * info_gain(t) / denom : 0.0;
}

inline double chi_square(const edmselect::ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    double chi = 0.0;
    for (std::size_t r = 0; r < t.n_rows; ++r) {
        for (std::size_t c = 0; c < t.n_cols; ++c) {
            double expected = static_cast<double>(t.row_sums[r]) *
                              static_cast<double>(t.col_sums[c]) /
                              static_cast<double>(t.total);
            if (expected <= 0.0) continue;
            double d = static_cast<double>(t.at(r, c)) - expected;
            chi += d * d / expected;
        }
    }
    return chi;
}

// AUC as the fraction of correctly ordered positive/negative pairs, ties
// counting one half.
inline double auc_pairwise(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    int64_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] <= 0) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] > 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) {
                wins += 1.0;
            } else if (scores[i] == scores[j]) {
                wins += 0.5;
            }
        }
    }
    return wins / static_cast<double>(pairs);
}

// Naive Bayes posterior by direct products of Laplace-smoothed ratios,
// following the same missing-as-value convention as the library.
inline std::vector<double> nb_posterior(const edmselect::Dataset& train,
                                        const std::vector<int32_t>& row) {
    auto n_classes = train.n_class_values();
    auto class_counts = train.class_counts();
    std::vector<double> joint(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        joint[c] = (static_cast<double>(class_counts[c]) + 1.0) /
                   (static_cast<double>(train.n_rows()) + static_cast<double>(n_classes));
        for (int a : train.predictor_indices()) {
            int cats = train.category_count(a);
            int declared = static_cast<int>(train.schema[static_cast<std::size_t>(a)].values.size());
            int32_t v = row[static_cast<std::size_t>(a)];
            int cat;
            bool phantom = false;
            if (v != edmselect::kMissing && v < declared) {
                cat = v;
            } else if (cats > declared) {
                cat = declared;
            } else {
                cat = cats;
                phantom = true;
            }
            int64_t count = 0;
            if (!phantom) {
                for (std::size_t r = 0; r < train.n_rows(); ++r) {
                    if (train.class_of(r) != static_cast<int32_t>(c)) continue;
                    if (train.category_of(r, a) == cat) ++count;
                }
            }
            double numer = static_cast<double>(count) + 1.0;
            double denom =
                static_cast<double>(class_counts[c]) + cats + (phantom ? 1.0 : 0.0);
            joint[c] *= numer / denom;
        }
    }
    double sum = 0.0;
    for (double j : joint) sum += j;
    for (double& j : joint) j /= sum;
    return joint;
}

// Best achievable single-attribute rule error, by exhaustive per-value
// majority counting over every predictor.
inline int64_t oner_best_error(const edmselect::Dataset& d) {
    int64_t best = -1;
    auto n_classes = d.n_class_values();
    for (int a : d.predictor_indices()) {
        std::size_t cats = static_cast<std::size_t>(d.category_count(a));
        std::vector<std::vector<int64_t>> counts(cats, std::vector<int64_t>(n_classes, 0));
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            ++counts[static_cast<std::size_t>(d.category_of(r, a))]
                    [static_cast<std::size_t>(d.class_of(r))];
        }
        int64_t errors = 0;
        for (std::size_t v = 0; v < cats; ++v) {
            int64_t n_v = 0, mx = 0;
            for (std::size_t c = 0; c < n_classes; ++c) {
                n_v += counts[v][c];
                mx = std::max(mx, counts[v][c]);
            }
            errors += n_v - mx;
        }
        if (best < 0 || errors < best) best = errors;
    }
    return best;
}

inline int64_t majority_error(const edmselect::Dataset& d) {
    auto counts = d.class_counts();
    int64_t mx = 0;
    for (int64_t c : counts) mx = std::max(mx, c);
    return static_cast<int64_t>(d.n_rows()) - mx;
}

}  // namespace oracle
