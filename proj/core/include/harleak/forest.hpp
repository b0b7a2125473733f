#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "harleak/features.hpp"
#include "harleak/model.hpp"

namespace harleak {

/// Row-major feature matrix with labels.
struct TrainingSet {
    std::size_t n_features = 0;
    std::size_t n_classes = 0;
    std::vector<double> x;
    std::vector<ClassId> y;

    std::size_t rows() const noexcept { return y.size(); }
    std::span<const double> row(std::size_t i) const { return {x.data() + i * n_features, n_features}; }

    static TrainingSet from_instances(std::span<const LabeledInstance> instances,
                                      std::span<const std::size_t> indices, std::size_t n_classes);
};

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 20;
    std::size_t min_leaf = 2;
    bool bootstrap = true;
    // 0 means ceil(sqrt(F)).
    std::size_t features_per_split = 0;
    // 0 means hardware concurrency. Output does not depend on it.
    std::size_t threads = 0;
};

/// Flat CART tree. Node 0 is the root; a node with feature < 0 is a leaf.
/// Rows with x[feature] <= threshold go left.
struct DecisionTree {
    struct Node {
        std::int32_t feature = -1;
        double threshold = 0.0;
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        std::vector<std::uint32_t> counts;  // leaves only
    };

    std::vector<Node> nodes;

    bool is_leaf(std::size_t i) const { return nodes[i].feature < 0; }
    const Node& leaf_for(std::span<const double> x) const;
    std::size_t depth() const;
};

/// Majority class of a leaf; ties go to the lowest id.
ClassId majority(std::span<const std::uint32_t> counts);

/// Greedy Gini CART on the given rows (duplicates allowed, as produced by
/// bootstrapping). Throws a format error on non-finite features.
DecisionTree train_tree(const TrainingSet& data, std::span<const std::size_t> rows, const ForestParams& params,
                        std::uint64_t seed);
DecisionTree train_tree(const TrainingSet& data, const ForestParams& params, std::uint64_t seed);

struct Prediction {
    ClassId label = 0;
    std::vector<double> probabilities;
};

class ForestModel {
public:
    ForestModel() = default;

    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
    const ForestParams& params() const noexcept { return params_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t schema_fingerprint() const noexcept { return fingerprint_; }
    std::size_t n_features() const noexcept { return n_features_; }
    const std::vector<std::string>& classes() const noexcept { return classes_; }

    /// Vote shares per class; arg-max with ties to the lowest class id.
    /// Throws a config error if the schema fingerprint or width differs.
    Prediction predict(const FeatureSchema& schema, std::span<const double> features) const;
    Prediction predict(std::uint64_t schema_fingerprint, std::span<const double> features) const;

    std::string to_json() const;
    static ForestModel from_json(const std::string& text);

private:
    friend ForestModel train_forest(const TrainingSet&, const FeatureSchema&, const ClassTable&,
                                    const ForestParams&, std::uint64_t);

    std::vector<DecisionTree> trees_;
    ForestParams params_;
    std::uint64_t seed_ = 0;
    std::uint64_t fingerprint_ = 0;
    std::size_t n_features_ = 0;
    std::vector<std::string> classes_;
};

/// Tree t is trained on a bootstrap resample drawn with derive_seed(seed, t)
/// and split with the same seed, so output is independent of thread count.
ForestModel train_forest(const TrainingSet& data, const FeatureSchema& schema, const ClassTable& classes,
                         const ForestParams& params, std::uint64_t seed);

/// Brute-force k-nearest-neighbour classifier on z-scored features. Used as
/// an independent reference model.
class KnnClassifier {
public:
    /// Normalisation is fit on `train` only.
    explicit KnnClassifier(const TrainingSet& train);

    /// Majority among the k nearest; distance ties go to the lower training
    /// index, vote ties to the lower class id.
    ClassId predict(std::span<const double> query, std::size_t k) const;

private:
    std::size_t n_features_;
    std::size_t n_classes_;
    std::vector<double> mean_;
    std::vector<double> scale_;
    std::vector<double> z_;  // normalised training rows
    std::vector<ClassId> y_;
};

}  // namespace harleak
