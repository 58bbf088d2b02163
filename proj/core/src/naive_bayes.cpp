#include <algorithm>
#include <cmath>
#include <ostream>

#include "edmselect/classifiers.hpp"

namespace edmselect {

int PredictionDistribution::argmax() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(probs.size()); ++i) {
        if (probs[static_cast<std::size_t>(i)] > probs[static_cast<std::size_t>(best)]) best = i;
    }
    return best;
}

NaiveBayesModel nb_train(const Dataset& d) {
    if (d.n_rows() < 1) throw ArgumentError("nb_train needs at least 1 instance");
    NaiveBayesModel m;
    m.class_index = d.class_index;
    m.schema_size = d.n_attributes();
    m.n_rows = static_cast<int64_t>(d.n_rows());
    m.class_counts = d.class_counts();
    m.predictors = d.predictor_indices();
    auto n_classes = static_cast<std::size_t>(m.n_classes());
    for (int p : m.predictors) {
        int cats = d.category_count(p);
        m.category_counts.push_back(cats);
        m.declared_counts.push_back(
            static_cast<int>(d.schema[static_cast<std::size_t>(p)].values.size()));
        m.cond_counts.emplace_back(static_cast<std::size_t>(cats) * n_classes, 0);
    }
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        auto c = static_cast<std::size_t>(d.class_of(r));
        for (std::size_t i = 0; i < m.predictors.size(); ++i) {
            auto v = static_cast<std::size_t>(d.category_of(r, m.predictors[i]));
            ++m.cond_counts[i][v * n_classes + c];
        }
    }
    return m;
}

PredictionDistribution nb_predict(const NaiveBayesModel& m, std::span<const int32_t> row) {
    if (row.size() != m.schema_size) {
        throw ArgumentError("nb_predict: row does not match the training schema");
    }
    auto n_classes = static_cast<std::size_t>(m.n_classes());
    std::vector<double> logp(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        logp[c] = std::log((static_cast<double>(m.class_counts[c]) + 1.0) /
                           (static_cast<double>(m.n_rows) + static_cast<double>(n_classes)));
    }
    for (std::size_t i = 0; i < m.predictors.size(); ++i) {
        int32_t v = row[static_cast<std::size_t>(m.predictors[i])];
        int cats = m.category_counts[i];
        int declared = m.declared_counts[i];
        // Missing (or a value the training schema never declared) falls
        // into the missing bucket; when training saw no missing cells the
        // bucket is scored as a zero-count extra category.
        int cat;
        if (v != kMissing && v < declared) {
            cat = v;
        } else if (cats > declared) {
            cat = declared;  // trained bucket
        } else {
            cat = cats;  // phantom bucket, zero count everywhere
        }
        bool phantom = cat >= cats;
        for (std::size_t c = 0; c < n_classes; ++c) {
            double cc = static_cast<double>(m.class_counts[c]);
            double numer = phantom
                               ? 1.0
                               : static_cast<double>(
                                     m.cond_counts[i][static_cast<std::size_t>(cat) * n_classes + c]) +
                                     1.0;
            double denom = cc + cats + (phantom ? 1.0 : 0.0);
            logp[c] += std::log(numer / denom);
        }
    }
    double mx = *std::max_element(logp.begin(), logp.end());
    PredictionDistribution dist;
    dist.probs.resize(n_classes);
    double sum = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        dist.probs[c] = std::exp(logp[c] - mx);
        sum += dist.probs[c];
    }
    for (auto& p : dist.probs) p /= sum;
    return dist;
}

void dump_naive_bayes(const NaiveBayesModel& m, const Dataset& d, std::ostream& out) {
    out << "NaiveBayes model (" << m.n_rows << " instances)\n";
    out << "class counts:";
    for (std::size_t c = 0; c < m.class_counts.size(); ++c) {
        out << ' ' << d.class_attribute().values[c] << '=' << m.class_counts[c];
    }
    out << '\n';
    for (std::size_t i = 0; i < m.predictors.size(); ++i) {
        const auto& attr = d.schema[static_cast<std::size_t>(m.predictors[i])];
        out << attr.name << ":\n";
        for (int v = 0; v < m.category_counts[i]; ++v) {
            out << "  "
                << (v < m.declared_counts[i] ? attr.values[static_cast<std::size_t>(v)]
                                             : std::string("?"))
                << ":";
            for (std::size_t c = 0; c < m.class_counts.size(); ++c) {
                out << ' '
                    << m.cond_counts[i][static_cast<std::size_t>(v) * m.class_counts.size() + c];
            }
            out << '\n';
        }
    }
}

}  // namespace edmselect
