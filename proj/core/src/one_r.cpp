#include <ostream>

#include "edmselect/classifiers.hpp"

namespace edmselect {

namespace {

// Majority class of `counts`; ties go to `fallback` when it is among the
// leaders, otherwise to the lowest class index.
int majority(const std::vector<int64_t>& counts, int fallback) {
    int64_t best = -1;
    int arg = 0;
    for (int c = 0; c < static_cast<int>(counts.size()); ++c) {
        if (counts[static_cast<std::size_t>(c)] > best) {
            best = counts[static_cast<std::size_t>(c)];
            arg = c;
        }
    }
    if (fallback >= 0 && counts[static_cast<std::size_t>(fallback)] == best) return fallback;
    return arg;
}

}  // namespace

OneRModel oner_train(const Dataset& d) {
    if (d.n_rows() < 1) throw ArgumentError("oner_train needs at least 1 instance");
    OneRModel m;
    m.schema_size = d.n_attributes();
    m.n_classes = static_cast<int>(d.n_class_values());
    auto class_counts = d.class_counts();
    m.default_class = majority(class_counts, -1);

    auto predictors = d.predictor_indices();
    if (predictors.empty()) {
        m.training_errors = static_cast<int64_t>(d.n_rows()) -
                            class_counts[static_cast<std::size_t>(m.default_class)];
        return m;
    }

    int64_t best_errors = -1;
    for (int p : predictors) {
        // Rule table covers every declared value plus the missing bucket,
        // whether or not it occurs in the data.
        auto declared = d.schema[static_cast<std::size_t>(p)].values.size();
        std::size_t cats = declared + 1;
        std::vector<std::vector<int64_t>> counts(cats,
                                                 std::vector<int64_t>(m.n_classes, 0));
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            int32_t v = d.rows[r][static_cast<std::size_t>(p)];
            std::size_t cat = v == kMissing ? declared : static_cast<std::size_t>(v);
            ++counts[cat][static_cast<std::size_t>(d.class_of(r))];
        }
        std::vector<int> rule(cats);
        int64_t errors = 0;
        for (std::size_t v = 0; v < cats; ++v) {
            int64_t n_v = 0, best = -1;
            int leaders = 0;
            for (int c = 0; c < m.n_classes; ++c) {
                int64_t cnt = counts[v][static_cast<std::size_t>(c)];
                n_v += cnt;
                if (cnt > best) {
                    best = cnt;
                    leaders = 1;
                } else if (cnt == best) {
                    ++leaders;
                }
            }
            if (n_v == 0) {
                rule[v] = m.default_class;
                continue;
            }
            int chosen;
            if (leaders > 1) {
                chosen = majority(class_counts, -1);
                // The overall majority may itself be tied among the leaders;
                // majority() already resolves to the lowest index then.
                if (counts[v][static_cast<std::size_t>(chosen)] != best) {
                    for (int c = 0; c < m.n_classes; ++c) {
                        if (counts[v][static_cast<std::size_t>(c)] == best) {
                            chosen = c;
                            break;
                        }
                    }
                }
            } else {
                chosen = majority(counts[v], -1);
            }
            rule[v] = chosen;
            errors += n_v - counts[v][static_cast<std::size_t>(chosen)];
        }
        if (best_errors < 0 || errors < best_errors) {
            best_errors = errors;
            m.chosen_attribute = p;
            m.rule = std::move(rule);
        }
    }
    m.training_errors = best_errors;
    return m;
}

PredictionDistribution oner_predict(const OneRModel& m, std::span<const int32_t> row) {
    if (row.size() != m.schema_size) {
        throw ArgumentError("oner_predict: row does not match the training schema");
    }
    int cls = m.default_class;
    if (m.chosen_attribute >= 0) {
        int32_t v = row[static_cast<std::size_t>(m.chosen_attribute)];
        std::size_t cat = v == kMissing ? m.rule.size() - 1 : static_cast<std::size_t>(v);
        cls = cat < m.rule.size() ? m.rule[cat] : m.default_class;
    }
    PredictionDistribution dist;
    dist.probs.assign(static_cast<std::size_t>(m.n_classes), 0.0);
    dist.probs[static_cast<std::size_t>(cls)] = 1.0;
    return dist;
}

void dump_one_r(const OneRModel& m, const Dataset& d, std::ostream& out) {
    if (m.chosen_attribute < 0) {
        out << "OneR: no predictors; always "
            << d.class_attribute().values[static_cast<std::size_t>(m.default_class)] << '\n';
        return;
    }
    const auto& attr = d.schema[static_cast<std::size_t>(m.chosen_attribute)];
    out << "OneR on " << attr.name << " (" << m.training_errors << " training errors)\n";
    for (std::size_t v = 0; v < m.rule.size(); ++v) {
        out << "  " << (v < attr.values.size() ? attr.values[v] : std::string("?")) << " -> "
            << d.class_attribute().values[static_cast<std::size_t>(m.rule[v])] << '\n';
    }
}

}  // namespace edmselect
