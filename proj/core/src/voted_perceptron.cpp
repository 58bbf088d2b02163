#include <cmath>
#include <unordered_map>

#include "edmselect/classifiers.hpp"

namespace edmselect {

namespace {

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }  // sign(0) == +1

std::vector<uint32_t> nonzero_indices(const std::vector<double>& x) {
    std::vector<uint32_t> idx;
    for (uint32_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0) idx.push_back(i);
    }
    return idx;
}

}  // namespace

int64_t VotedPerceptronModel::total_votes() const {
    int64_t c = 0;
    for (int64_t v : votes) c += v;
    return c;
}

std::vector<double> VotedPerceptronModel::prototype_weights(std::size_t k) const {
    std::vector<double> w(n_cols + 1, 0.0);  // bias last
    for (std::size_t i = 0; i < k && i < update_of.size(); ++i) {
        const auto& u = update_pool[update_of[i]];
        for (uint32_t col : u.idx) w[col] += u.y;
        w[n_cols] += u.y;
    }
    return w;
}

VotedPerceptronModel vp_train(const EncodedMatrix& m, int epochs, uint64_t /*seed*/) {
    if (m.rows.empty()) throw ArgumentError("vp_train: empty training matrix");
    if (epochs < 0) throw ArgumentError("vp_train: negative epochs");
    std::size_t n = m.rows.size();

    // Sparse views of the one-hot rows; entries are all 1.
    std::vector<std::vector<uint32_t>> sparse(n);
    for (std::size_t r = 0; r < n; ++r) sparse[r] = nonzero_indices(m.rows[r]);

    VotedPerceptronModel model;
    model.n_cols = m.n_cols;
    model.epochs = epochs;
    model.votes.push_back(0);  // zero prototype; stays 0 if step one errs

    std::vector<double> w(m.n_cols, 0.0);
    double bias = 0.0;
    std::unordered_map<std::size_t, uint32_t> pool_of_row;
    for (int e = 0; e < epochs; ++e) {
        for (std::size_t r = 0; r < n; ++r) {
            double s = bias;
            for (uint32_t col : sparse[r]) s += w[col];
            int y = m.labels[r];
            if (sign_of(s) == y) {
                ++model.votes.back();
            } else {
                for (uint32_t col : sparse[r]) w[col] += y;
                bias += y;
                auto [it, inserted] =
                    pool_of_row.try_emplace(r, static_cast<uint32_t>(model.update_pool.size()));
                if (inserted) {
                    model.update_pool.push_back({sparse[r], static_cast<double>(y)});
                }
                model.update_of.push_back(it->second);
                model.votes.push_back(1);
            }
        }
    }
    return model;
}

double vp_score(const VotedPerceptronModel& m, std::span<const double> x) {
    if (x.size() != m.n_cols) throw ArgumentError("vp_score: column count mismatch");
    int64_t total = m.total_votes();
    if (total == 0) return 0.5;

    // Prototype k differs from k-1 by one pooled update, so all the dot
    // products come from one pass over the pool plus a prefix walk.
    std::vector<double> pool_dot(m.update_pool.size());
    for (std::size_t j = 0; j < m.update_pool.size(); ++j) {
        const auto& u = m.update_pool[j];
        double dot = 1.0;  // bias column
        for (uint32_t col : u.idx) dot += x[col];
        pool_dot[j] = u.y * dot;
    }
    double running = 0.0;
    int64_t s = m.votes[0] * sign_of(running);
    for (std::size_t k = 0; k < m.update_of.size(); ++k) {
        running += pool_dot[m.update_of[k]];
        s += m.votes[k + 1] * sign_of(running);
    }
    double vote_share = static_cast<double>(s) / static_cast<double>(total);
    return (1.0 + vote_share) / 2.0;
}

PredictionDistribution vp_predict(const VotedPerceptronModel& m, std::span<const double> x) {
    double p = vp_score(m, x);
    PredictionDistribution dist;
    dist.probs = {p, 1.0 - p};
    return dist;
}

}  // namespace edmselect
