#include "edmselect/classifiers.hpp"

namespace edmselect {

namespace {

class NbPredictor : public Predictor {
public:
    explicit NbPredictor(NaiveBayesModel model) : model_(std::move(model)) {}
    PredictionDistribution predict(std::span<const int32_t> row) const override {
        return nb_predict(model_, row);
    }

private:
    NaiveBayesModel model_;
};

class NbClassifier : public Classifier {
public:
    std::string name() const override { return "NaiveBayes"; }
    std::unique_ptr<Predictor> train(const Dataset& d) const override {
        return std::make_unique<NbPredictor>(nb_train(d));
    }
};

class VpPredictor : public Predictor {
public:
    VpPredictor(VotedPerceptronModel model, std::vector<std::size_t> block_offset,
                std::vector<int> block_arity, std::vector<int> predictors, int positive_class,
                std::size_t schema_size)
        : model_(std::move(model)),
          block_offset_(std::move(block_offset)),
          block_arity_(std::move(block_arity)),
          predictors_(std::move(predictors)),
          positive_class_(positive_class),
          schema_size_(schema_size) {}

    PredictionDistribution predict(std::span<const int32_t> row) const override {
        if (row.size() != schema_size_) {
            throw ArgumentError("vp predict: row does not match the training schema");
        }
        std::vector<double> x(model_.n_cols, 0.0);
        for (std::size_t i = 0; i < predictors_.size(); ++i) {
            int32_t v = row[static_cast<std::size_t>(predictors_[i])];
            if (v != kMissing && v < block_arity_[i]) {
                x[block_offset_[i] + static_cast<std::size_t>(v)] = 1.0;
            }
        }
        double p = vp_score(model_, x);
        PredictionDistribution dist;
        dist.probs.assign(2, 0.0);
        dist.probs[static_cast<std::size_t>(positive_class_)] = p;
        dist.probs[static_cast<std::size_t>(1 - positive_class_)] = 1.0 - p;
        return dist;
    }

private:
    VotedPerceptronModel model_;
    std::vector<std::size_t> block_offset_;
    std::vector<int> block_arity_;
    std::vector<int> predictors_;
    int positive_class_;
    std::size_t schema_size_;
};

class VpClassifier : public Classifier {
public:
    explicit VpClassifier(int epochs) : epochs_(epochs) {}
    std::string name() const override { return "VotedPerceptron"; }
    std::unique_ptr<Predictor> train(const Dataset& d) const override {
        EncodedMatrix m = one_hot_encode(d);
        auto model = vp_train(m, epochs_);
        return std::make_unique<VpPredictor>(std::move(model), m.block_offset, m.block_arity,
                                             d.predictor_indices(), d.positive_class,
                                             d.n_attributes());
    }

private:
    int epochs_;
};

class OneRPredictor : public Predictor {
public:
    explicit OneRPredictor(OneRModel model) : model_(std::move(model)) {}
    PredictionDistribution predict(std::span<const int32_t> row) const override {
        return oner_predict(model_, row);
    }

private:
    OneRModel model_;
};

class OneRClassifier : public Classifier {
public:
    std::string name() const override { return "OneR"; }
    std::unique_ptr<Predictor> train(const Dataset& d) const override {
        return std::make_unique<OneRPredictor>(oner_train(d));
    }
};

class PartPredictor : public Predictor {
public:
    explicit PartPredictor(PartModel model) : model_(std::move(model)) {}
    PredictionDistribution predict(std::span<const int32_t> row) const override {
        return part_predict(model_, row);
    }

private:
    PartModel model_;
};

class PartClassifier : public Classifier {
public:
    explicit PartClassifier(PartParams params) : params_(params) {}
    std::string name() const override { return "PART"; }
    std::unique_ptr<Predictor> train(const Dataset& d) const override {
        return std::make_unique<PartPredictor>(part_train(d, params_));
    }

private:
    PartParams params_;
};

}  // namespace

std::unique_ptr<Classifier> make_naive_bayes() { return std::make_unique<NbClassifier>(); }

std::unique_ptr<Classifier> make_voted_perceptron(int epochs) {
    return std::make_unique<VpClassifier>(epochs);
}

std::unique_ptr<Classifier> make_one_r() { return std::make_unique<OneRClassifier>(); }

std::unique_ptr<Classifier> make_part(PartParams params) {
    return std::make_unique<PartClassifier>(params);
}

}  // namespace edmselect
