#include "edmselect/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "edmselect/rng.hpp"

namespace edmselect {

std::string method_name(Method m) {
    switch (m) {
        case Method::CB: return "CB";
        case Method::CH: return "CH";
        case Method::GR: return "GR";
        case Method::IG: return "IG";
        case Method::RF: return "RF";
        case Method::SU: return "SU";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    for (Method m : kAllMethods) {
        if (method_name(m) == name) return m;
    }
    throw ArgumentError("unknown method '" + name + "' (valid: CB, CH, GR, IG, RF, SU)");
}

double entropy(std::span<const int64_t> counts) {
    int64_t total = 0;
    for (int64_t c : counts) {
        if (c < 0) throw ArgumentError("negative count in entropy");
        total += c;
    }
    if (total == 0) return 0.0;
    double h = 0.0;
    for (int64_t c : counts) {
        if (c > 0) h -= static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    h /= static_cast<double>(total);
    h += std::log2(static_cast<double>(total));
    return h < 0.0 ? 0.0 : h;
}

double info_gain(const ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    double h_class = entropy(t.col_sums);
    double cond = 0.0;
    for (std::size_t r = 0; r < t.n_rows; ++r) {
        if (t.row_sums[r] == 0) continue;
        std::span<const int64_t> row(t.counts.data() + r * t.n_cols, t.n_cols);
        cond += static_cast<double>(t.row_sums[r]) / static_cast<double>(t.total) * entropy(row);
    }
    double ig = h_class - cond;
    return ig < 0.0 ? 0.0 : ig;
}

double gain_ratio(const ContingencyTable& t) {
    double h_attr = entropy(t.row_sums);
    if (h_attr <= 0.0) return 0.0;
    return info_gain(t) / h_attr;
}

double symmetrical_uncertainty(const ContingencyTable& t) {
    double denom = entropy(t.col_sums) + entropy(t.row_sums);
    if (denom <= 0.0) return 0.0;
    return 2.0 * info_gain(t) / denom;
}

double chi_square(const ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    double chi = 0.0;
    double n = static_cast<double>(t.total);
    for (std::size_t r = 0; r < t.n_rows; ++r) {
        for (std::size_t c = 0; c < t.n_cols; ++c) {
            double expected =
                static_cast<double>(t.row_sums[r]) * static_cast<double>(t.col_sums[c]) / n;
            if (expected <= 0.0) continue;
            double diff = static_cast<double>(t.at(r, c)) - expected;
            chi += diff * diff / expected;
        }
    }
    return chi;
}

// ---------------------------------------------------------------------------
// ReliefF

namespace {

// diff over one attribute: equal and both non-missing -> 0, else 1.
inline int nominal_diff(int32_t a, int32_t b) {
    return (a != kMissing && a == b) ? 0 : 1;
}

int hamming(const std::vector<int32_t>& a, const std::vector<int32_t>& b,
            const std::vector<int>& predictors) {
    int dist = 0;
    for (int p : predictors) {
        dist += nominal_diff(a[static_cast<std::size_t>(p)], b[static_cast<std::size_t>(p)]);
    }
    return dist;
}

}  // namespace

std::vector<FeatureScore> relief_f(const Dataset& d, const ReliefParams& params) {
    if (d.n_rows() < 2) throw ArgumentError("relief_f needs at least 2 instances");
    if (params.n_neighbors < 1) throw ArgumentError("n_neighbors must be positive");
    auto predictors = d.predictor_indices();
    std::size_t n = d.n_rows();
    auto class_counts = d.class_counts();
    std::size_t n_classes = class_counts.size();
    std::vector<double> prior(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        prior[c] = static_cast<double>(class_counts[c]) / static_cast<double>(n);
    }

    std::vector<std::size_t> sampled;
    if (params.sample < 0 || static_cast<std::size_t>(params.sample) >= n) {
        sampled.resize(n);
        for (std::size_t i = 0; i < n; ++i) sampled[i] = i;
    } else {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        std::mt19937_64 gen(params.seed);
        shuffle_inplace(all, gen);
        sampled.assign(all.begin(), all.begin() + params.sample);
    }

    std::vector<double> weights(predictors.size(), 0.0);
    double m = static_cast<double>(sampled.size());
    std::vector<std::pair<int, std::size_t>> order;  // (distance, row) per class
    for (std::size_t ri : sampled) {
        auto my_class = static_cast<std::size_t>(d.class_of(ri));
        // k nearest per class, ties by ascending row index
        std::vector<std::vector<std::size_t>> nearest(n_classes);
        for (std::size_t c = 0; c < n_classes; ++c) {
            order.clear();
            for (std::size_t rj = 0; rj < n; ++rj) {
                if (rj == ri) continue;
                if (static_cast<std::size_t>(d.class_of(rj)) != c) continue;
                order.emplace_back(hamming(d.rows[ri], d.rows[rj], predictors), rj);
            }
            std::size_t k = std::min<std::size_t>(order.size(),
                                                  static_cast<std::size_t>(params.n_neighbors));
            std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end());
            for (std::size_t i = 0; i < k; ++i) nearest[c].push_back(order[i].second);
        }

        // Miss-class weights: priors over the classes that have instances,
        // renormalized so the miss mass always totals one.
        double avail = 0.0;
        for (std::size_t c = 0; c < n_classes; ++c) {
            if (c != my_class && !nearest[c].empty()) avail += prior[c];
        }
        for (std::size_t a = 0; a < predictors.size(); ++a) {
            int p = predictors[a];
            double hit_mean = 0.0;
            if (!nearest[my_class].empty()) {
                for (std::size_t rj : nearest[my_class]) {
                    hit_mean += nominal_diff(d.rows[ri][static_cast<std::size_t>(p)],
                                             d.rows[rj][static_cast<std::size_t>(p)]);
                }
                hit_mean /= static_cast<double>(nearest[my_class].size());
            }
            double miss_term = 0.0;
            if (avail > 0.0) {
                for (std::size_t c = 0; c < n_classes; ++c) {
                    if (c == my_class || nearest[c].empty()) continue;
                    double mean = 0.0;
                    for (std::size_t rj : nearest[c]) {
                        mean += nominal_diff(d.rows[ri][static_cast<std::size_t>(p)],
                                             d.rows[rj][static_cast<std::size_t>(p)]);
                    }
                    mean /= static_cast<double>(nearest[c].size());
                    miss_term += prior[c] / avail * mean;
                }
            }
            weights[a] += (miss_term - hit_mean) / m;
        }
    }

    std::vector<FeatureScore> out(predictors.size());
    for (std::size_t a = 0; a < predictors.size(); ++a) {
        out[a] = {predictors[a], weights[a], Method::RF};
    }
    return out;
}

// ---------------------------------------------------------------------------
// CFS

CorrelationCache build_correlation_cache(const Dataset& d) {
    CorrelationCache cache;
    cache.predictors = d.predictor_indices();
    std::size_t p = cache.predictors.size();
    cache.su_with_class.resize(p);
    cache.su_pairwise.assign(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        cache.su_with_class[i] = symmetrical_uncertainty(contingency(d, cache.predictors[i]));
        for (std::size_t j = 0; j <= i; ++j) {
            double su = symmetrical_uncertainty(cross_tab(d, cache.predictors[i], cache.predictors[j]));
            cache.su_pairwise[i][j] = su;
            cache.su_pairwise[j][i] = su;
        }
    }
    return cache;
}

double cfs_merit(const std::vector<int>& subset, const CorrelationCache& cache) {
    if (subset.empty()) throw ArgumentError("cfs_merit of an empty subset");
    double sum_cf = 0.0;
    double sum_ff = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        sum_cf += cache.su_with_class[static_cast<std::size_t>(subset[i])];
        for (std::size_t j = 0; j < i; ++j) {
            sum_ff += cache.su_pairwise[static_cast<std::size_t>(subset[i])]
                                       [static_cast<std::size_t>(subset[j])];
        }
    }
    // k*mean(r_cf)/sqrt(k + k(k-1)*mean(r_ff)) collapses to this form.
    double denom = std::sqrt(static_cast<double>(subset.size()) + 2.0 * sum_ff);
    if (denom <= 0.0) return 0.0;
    return sum_cf / denom;
}

// ---------------------------------------------------------------------------
// Rankings

namespace {

Ranking ranking_from_scores(Method method, std::vector<FeatureScore> scores) {
    std::sort(scores.begin(), scores.end(), [](const FeatureScore& a, const FeatureScore& b) {
        if (a.merit != b.merit) return a.merit > b.merit;
        return a.attribute < b.attribute;
    });
    Ranking r;
    r.method = method;
    r.ordered.reserve(scores.size());
    r.merits.reserve(scores.size());
    for (const auto& s : scores) {
        r.ordered.push_back(s.attribute);
        r.merits.push_back(s.merit);
    }
    return r;
}

Ranking rank_cfs_greedy(const Dataset& d) {
    auto cache = build_correlation_cache(d);
    std::size_t p = cache.predictors.size();
    std::vector<bool> used(p, false);
    std::vector<int> selected;
    Ranking r;
    r.method = Method::CB;
    // Forward selection continued past the merit peak so every predictor
    // gets a rank; the recorded merit is the subset merit at addition.
    for (std::size_t step = 0; step < p; ++step) {
        int best = -1;
        double best_merit = 0.0;
        for (std::size_t cand = 0; cand < p; ++cand) {
            if (used[cand]) continue;
            selected.push_back(static_cast<int>(cand));
            double merit = cfs_merit(selected, cache);
            selected.pop_back();
            if (best < 0 || merit > best_merit) {
                best = static_cast<int>(cand);
                best_merit = merit;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        selected.push_back(best);
        r.ordered.push_back(cache.predictors[static_cast<std::size_t>(best)]);
        r.merits.push_back(best_merit);
    }
    return r;
}

}  // namespace

Ranking rank_attributes(const Dataset& d, Method method, const RankParams& params) {
    if (d.n_predictors() < 1) throw ArgumentError("dataset has no predictors");
    switch (method) {
        case Method::CB:
            return rank_cfs_greedy(d);
        case Method::RF: {
            auto scores = relief_f(d, params.relief);
            return ranking_from_scores(method, std::move(scores));
        }
        default: {
            std::vector<FeatureScore> scores;
            scores.reserve(d.n_predictors());
            for (int p : d.predictor_indices()) {
                auto t = contingency(d, p);
                double merit = 0.0;
                switch (method) {
                    case Method::CH: merit = chi_square(t); break;
                    case Method::GR: merit = gain_ratio(t); break;
                    case Method::IG: merit = info_gain(t); break;
                    case Method::SU: merit = symmetrical_uncertainty(t); break;
                    default: break;
                }
                scores.push_back({p, merit, method});
            }
            return ranking_from_scores(method, std::move(scores));
        }
    }
}

void write_ranking_csv(const Ranking& r, const Dataset& d, std::ostream& out) {
    out << "rank,attribute_index,attribute_name,merit\n";
    char buf[64];
    for (std::size_t i = 0; i < r.ordered.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.4f", r.merits[i]);
        out << (i + 1) << ',' << r.ordered[i] << ','
            << d.schema[static_cast<std::size_t>(r.ordered[i])].name << ',' << buf << '\n';
    }
}

}  // namespace edmselect
