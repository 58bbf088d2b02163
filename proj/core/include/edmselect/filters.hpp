#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "edmselect/contingency.hpp"
#include "edmselect/dataset.hpp"

namespace edmselect {

enum class Method { CB, CH, GR, IG, RF, SU };

inline constexpr Method kAllMethods[] = {Method::CB, Method::CH, Method::GR,
                                         Method::IG, Method::RF, Method::SU};

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // throws ArgumentError

// Shannon entropy in bits, 0*log0 == 0, H([]) == H(all zero) == 0.
double entropy(std::span<const int64_t> counts);

// IG = H(class) - sum_v (n_v/N) H(class | attr = v). Rows of the table are
// attribute values, columns are class values. Returns 0 for an empty table.
double info_gain(const ContingencyTable& t);

// IG / H(attr); 0 when H(attr) == 0.
double gain_ratio(const ContingencyTable& t);

// 2*IG / (H(class) + H(attr)); 0 when both entropies are 0.
double symmetrical_uncertainty(const ContingencyTable& t);

// Pearson chi-square with E = row*col/N; cells with E == 0 contribute 0,
// no continuity correction. Returns 0 for an empty table.
double chi_square(const ContingencyTable& t);

struct FeatureScore {
    int attribute = 0;
    double merit = 0.0;
    Method method = Method::IG;
};

struct ReliefParams {
    int n_neighbors = 10;
    long sample = -1;  // instances to sample; -1 = all (deterministic, seed unused)
    uint64_t seed = 0;
};

// ReliefF attribute weighting over nominal data. Neighbors are ranked by
// Hamming distance across predictors; diff(A,x,y) is 0 only when both
// cells are equal and non-missing (missing never matches, including
// missing-vs-missing). Misses are weighted by class prior, renormalized
// over the classes that actually have instances. Weights land in [-1,1].
std::vector<FeatureScore> relief_f(const Dataset& d, const ReliefParams& params = {});

struct CorrelationCache {
    std::vector<double> su_with_class;  // indexed by predictor position
    std::vector<std::vector<double>> su_pairwise;
    std::vector<int> predictors;  // attribute index per position
};

CorrelationCache build_correlation_cache(const Dataset& d);

// CFS merit of a predictor subset given cached symmetric uncertainties:
// k*mean(r_cf) / sqrt(k + k(k-1)*mean(r_ff)); 0 when the denominator is 0.
// `subset` holds positions into cache.predictors.
double cfs_merit(const std::vector<int>& subset, const CorrelationCache& cache);

struct Ranking {
    Method method = Method::IG;
    std::vector<int> ordered;    // predictor attribute indices, best first
    std::vector<double> merits;  // aligned; for CB, the subset merit at addition
};

struct RankParams {
    ReliefParams relief;
};

// Total order of the predictors under one evaluator. CH/GR/IG/SU score each
// predictor from its contingency table; RF uses relief_f; CB runs a greedy
// forward CFS search and keeps adding the best extension until every
// predictor is placed. Ties break toward the lower attribute index.
Ranking rank_attributes(const Dataset& d, Method method, const RankParams& params = {});

// CSV serialization: "rank,attribute_index,attribute_name,merit".
void write_ranking_csv(const Ranking& r, const Dataset& d, std::ostream& out);

}  // namespace edmselect
