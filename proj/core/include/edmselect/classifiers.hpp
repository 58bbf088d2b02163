#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "edmselect/dataset.hpp"

namespace edmselect {

struct PredictionDistribution {
    std::vector<double> probs;  // per class value, non-negative, sums to 1

    // Ties resolve to the lowest class index.
    int argmax() const;
};

// ---------------------------------------------------------------------------
// Naive Bayes

struct NaiveBayesModel {
    std::vector<int64_t> class_counts;
    // cond_counts[p][cat * n_classes + c]; cat ranges over the attribute's
    // categories under missing-as-value as seen at training time.
    std::vector<std::vector<int64_t>> cond_counts;
    std::vector<int> category_counts;  // per predictor, incl. bucket if trained on missing
    std::vector<int> declared_counts;  // per predictor, declared values only
    std::vector<int> predictors;       // attribute indices in the training schema
    int class_index = 0;
    std::size_t schema_size = 0;
    int64_t n_rows = 0;

    int n_classes() const { return static_cast<int>(class_counts.size()); }
};

NaiveBayesModel nb_train(const Dataset& d);

// Laplace(+1)-smoothed posterior, computed in log space. A missing or
// unseen value falls into the attribute's missing bucket; when training
// never saw that bucket it is scored as a zero-count extra category.
PredictionDistribution nb_predict(const NaiveBayesModel& m, std::span<const int32_t> row);

void dump_naive_bayes(const NaiveBayesModel& m, const Dataset& d, std::ostream& out);

// ---------------------------------------------------------------------------
// Voted perceptron

struct EncodedMatrix;  // dataset.hpp

struct VotedPerceptronModel {
    // Prototype k has weight vector w_k = sum of the first k update vectors
    // and survival count votes[k]. votes[0] belongs to the zero prototype
    // and stays 0 if the very first training step is a mistake.
    struct SparseVec {
        std::vector<uint32_t> idx;
        double y = 0.0;  // label of the mistaken example; update = y * x
    };
    std::vector<SparseVec> update_pool;  // distinct mistaken examples
    std::vector<uint32_t> update_of;     // per appended prototype, pool entry
    std::vector<int64_t> votes;          // survival counts, votes.size() == update_of.size() + 1
    std::size_t n_cols = 0;
    int epochs = 0;

    int64_t total_votes() const;
    std::size_t prototype_count() const { return votes.size(); }
    // Materializes prototype weights (plus bias as the last entry); test aid.
    std::vector<double> prototype_weights(std::size_t k) const;
};

// Classic voted training: examples in row order, no shuffling; a mistake
// appends (w + y*x, 1), a correct prediction increments the current count.
// The running count starts at 0 so the survival counts sum to the number
// of training steps. sign(0) counts as +1 throughout.
VotedPerceptronModel vp_train(const EncodedMatrix& m, int epochs, uint64_t seed = 0);

// p(positive) = (1 + s/C)/2 with s the signed vote sum and C the total
// vote mass; C == 0 (untrained model) gives 0.5.
double vp_score(const VotedPerceptronModel& m, std::span<const double> x);
PredictionDistribution vp_predict(const VotedPerceptronModel& m, std::span<const double> x);

// ---------------------------------------------------------------------------
// OneR

struct OneRModel {
    int chosen_attribute = -1;  // -1 when the dataset has no predictors
    std::vector<int> rule;      // per category (missing bucket included) -> class value
    int default_class = 0;
    int n_classes = 0;
    std::size_t schema_size = 0;
    int64_t training_errors = 0;
};

// Minimum-training-error one-attribute rule. Value ties fall back to the
// overall majority class, then the lowest class index; attribute ties take
// the lowest attribute index.
OneRModel oner_train(const Dataset& d);
PredictionDistribution oner_predict(const OneRModel& m, std::span<const int32_t> row);

void dump_one_r(const OneRModel& m, const Dataset& d, std::ostream& out);

// ---------------------------------------------------------------------------
// PART

struct PartRule {
    struct Test {
        int attribute = 0;
        int category = 0;  // missing bucket = declared value count
    };
    std::vector<Test> conditions;      // empty for the default rule
    std::vector<int64_t> class_counts; // at the defining leaf
};

struct PartModel {
    std::vector<PartRule> rules;      // ends with the default rule
    std::vector<int> declared_counts; // per attribute; maps missing to its bucket
    int n_classes = 0;
    std::size_t schema_size = 0;
};

struct PartParams {
    int min_leaf = 2;
    double cf = 0.25;  // pessimistic-error confidence
};

// Separate-and-conquer rule learner. Each round grows a partial decision
// tree on the residual data (gain-ratio multiway splits, children expanded
// in ascending-entropy order, expansion stops once an expanded child
// refuses to collapse), takes the leaf covering the most instances as a
// rule, and drops the covered rows. A default rule over the leftover rows
// closes the list.
PartModel part_train(const Dataset& d, const PartParams& params = {});

// First matching rule fires; the distribution is the Laplace-smoothed
// leaf counts. The default rule matches everything.
PredictionDistribution part_predict(const PartModel& m, std::span<const int32_t> row);

void dump_part(const PartModel& m, const Dataset& d, std::ostream& out);

// Upper confidence bound on the error count of a leaf with n instances and
// e errors (C4.5 pessimistic estimate). Exposed for tests.
double pessimistic_errors(double n, double e, double cf);

// ---------------------------------------------------------------------------
// Uniform training/prediction interface for the evaluation harness.

class Predictor {
public:
    virtual ~Predictor() = default;
    virtual PredictionDistribution predict(std::span<const int32_t> row) const = 0;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::string name() const = 0;
    virtual std::unique_ptr<Predictor> train(const Dataset& d) const = 0;
};

std::unique_ptr<Classifier> make_naive_bayes();
std::unique_ptr<Classifier> make_voted_perceptron(int epochs = 10);
std::unique_ptr<Classifier> make_one_r();
std::unique_ptr<Classifier> make_part(PartParams params = {});

}  // namespace edmselect
