#include "harleak/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "harleak/error.hpp"
#include "harleak/rng.hpp"

namespace harleak {

TrainingSet TrainingSet::from_instances(std::span<const LabeledInstance> instances,
                                        std::span<const std::size_t> indices, std::size_t n_classes) {
    TrainingSet ts;
    ts.n_classes = n_classes;
    if (indices.empty()) return ts;
    ts.n_features = instances[indices.front()].features.size();
    ts.x.reserve(indices.size() * ts.n_features);
    ts.y.reserve(indices.size());
    for (std::size_t i : indices) {
        const auto& inst = instances[i];
        if (inst.features.size() != ts.n_features) throw_invariant("instances disagree on feature width");
        if (inst.label >= n_classes) throw_invariant("instance label outside the class table");
        ts.x.insert(ts.x.end(), inst.features.begin(), inst.features.end());
        ts.y.push_back(inst.label);
    }
    return ts;
}

ClassId majority(std::span<const std::uint32_t> counts) {
    ClassId best = 0;
    for (ClassId c = 1; c < counts.size(); ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

const DecisionTree::Node& DecisionTree::leaf_for(std::span<const double> x) const {
    std::size_t i = 0;
    while (nodes[i].feature >= 0) {
        const auto& n = nodes[i];
        i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[i];
}

std::size_t DecisionTree::depth() const {
    std::size_t deepest = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        if (nodes[i].feature >= 0) {
            stack.emplace_back(nodes[i].left, d + 1);
            stack.emplace_back(nodes[i].right, d + 1);
        }
    }
    return deepest;
}

namespace {

class TreeBuilder {
public:
    TreeBuilder(const TrainingSet& data, const ForestParams& params, std::uint64_t seed)
        : data_(data), params_(params), rng_(seed) {
        const std::size_t f = data.n_features;
        mtry_ = params.features_per_split ? params.features_per_split
                                          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(f))));
        mtry_ = std::clamp<std::size_t>(mtry_, f ? 1 : 0, f);
        feature_order_.resize(f);
        min_leaf_ = std::max<std::size_t>(params.min_leaf, 1);
    }

    DecisionTree build(std::vector<std::size_t> rows) {
        rows_ = std::move(rows);
        tree_.nodes.reserve(2 * rows_.size() / min_leaf_ + 1);
        grow(0, rows_.size(), 0);
        return std::move(tree_);
    }

private:
    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double score = 0.0;  // sum over children of (sum_c n_c^2) / n, larger is purer
    };

    std::uint32_t grow(std::size_t lo, std::size_t hi, std::size_t depth) {
        const auto id = static_cast<std::uint32_t>(tree_.nodes.size());
        tree_.nodes.emplace_back();

        std::vector<std::uint32_t> counts(data_.n_classes, 0);
        for (std::size_t i = lo; i < hi; ++i) ++counts[data_.y[rows_[i]]];
        const std::size_t n = hi - lo;
        const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
        if (pure || depth >= params_.max_depth || n < 2 * min_leaf_) return make_leaf(id, std::move(counts));

        const Split split = best_split(lo, hi);
        if (!split.found) return make_leaf(id, std::move(counts));

        const auto mid_it =
            std::stable_partition(rows_.begin() + static_cast<std::ptrdiff_t>(lo), rows_.begin() + static_cast<std::ptrdiff_t>(hi),
                                  [&](std::size_t r) { return value(r, split.feature) <= split.threshold; });
        const auto mid = static_cast<std::size_t>(mid_it - rows_.begin());

        const std::uint32_t left = grow(lo, mid, depth + 1);
        const std::uint32_t right = grow(mid, hi, depth + 1);
        auto& node = tree_.nodes[id];
        node.feature = static_cast<std::int32_t>(split.feature);
        node.threshold = split.threshold;
        node.left = left;
        node.right = right;
        return id;
    }

    std::uint32_t make_leaf(std::uint32_t id, std::vector<std::uint32_t> counts) {
        tree_.nodes[id].counts = std::move(counts);
        return id;
    }

    double value(std::size_t row, std::size_t feature) const { return data_.x[row * data_.n_features + feature]; }

    Split best_split(std::size_t lo, std::size_t hi) {
        // Partial Fisher-Yates over the feature indices.
        std::iota(feature_order_.begin(), feature_order_.end(), std::size_t{0});
        for (std::size_t i = 0; i < mtry_; ++i) {
            const std::size_t j = i + rng_.uniform_index(feature_order_.size() - i);
            std::swap(feature_order_[i], feature_order_[j]);
        }

        const std::size_t n = hi - lo;
        Split best;
        std::vector<double> left(data_.n_classes), right(data_.n_classes);
        for (std::size_t s = 0; s < mtry_; ++s) {
            const std::size_t f = feature_order_[s];
            buffer_.clear();
            for (std::size_t i = lo; i < hi; ++i) buffer_.emplace_back(value(rows_[i], f), data_.y[rows_[i]]);
            std::sort(buffer_.begin(), buffer_.end());
            if (buffer_.front().first == buffer_.back().first) continue;

            std::fill(left.begin(), left.end(), 0.0);
            std::fill(right.begin(), right.end(), 0.0);
            for (const auto& [v, c] : buffer_) right[c] += 1.0;
            double left_sq = 0.0;
            double right_sq = 0.0;
            for (double r : right) right_sq += r * r;

            for (std::size_t i = 1; i < n; ++i) {
                const ClassId c = buffer_[i - 1].second;
                left_sq += 2.0 * left[c] + 1.0;
                right_sq -= 2.0 * right[c] - 1.0;
                left[c] += 1.0;
                right[c] -= 1.0;
                if (i < min_leaf_ || n - i < min_leaf_) continue;
                const double a = buffer_[i - 1].first;
                const double b = buffer_[i].first;
                if (!(a < b)) continue;
                const double score = left_sq / static_cast<double>(i) + right_sq / static_cast<double>(n - i);
                if (!best.found || score > best.score) {
                    double threshold = a + (b - a) / 2.0;
                    if (!(threshold < b)) threshold = a;
                    best = {true, f, threshold, score};
                }
            }
        }
        return best;
    }

    const TrainingSet& data_;
    const ForestParams& params_;
    Rng rng_;
    std::size_t mtry_ = 0;
    std::size_t min_leaf_ = 1;
    std::vector<std::size_t> feature_order_;
    std::vector<std::size_t> rows_;
    std::vector<std::pair<double, ClassId>> buffer_;
    DecisionTree tree_;
};

void check_training_set(const TrainingSet& data) {
    if (data.rows() == 0) throw_config("cannot train on an empty training set");
    if (data.n_classes == 0) throw_config("training set has no classes");
    if (data.x.size() != data.rows() * data.n_features) throw_invariant("training matrix has the wrong shape");
    for (std::size_t i = 0; i < data.x.size(); ++i)
        if (!std::isfinite(data.x[i]))
            throw_format("non-finite feature value at row " + std::to_string(i / std::max<std::size_t>(data.n_features, 1)) +
                         ", slot " + std::to_string(i % std::max<std::size_t>(data.n_features, 1)));
    for (ClassId y : data.y)
        if (y >= data.n_classes) throw_invariant("label outside the class table");
}

}  // namespace

DecisionTree train_tree(const TrainingSet& data, std::span<const std::size_t> rows, const ForestParams& params,
                        std::uint64_t seed) {
    check_training_set(data);
    if (rows.empty()) throw_config("cannot train a tree on zero rows");
    TreeBuilder builder(data, params, seed);
    return builder.build(std::vector<std::size_t>(rows.begin(), rows.end()));
}

DecisionTree train_tree(const TrainingSet& data, const ForestParams& params, std::uint64_t seed) {
    std::vector<std::size_t> rows(data.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return train_tree(data, rows, params, seed);
}

ForestModel train_forest(const TrainingSet& data, const FeatureSchema& schema, const ClassTable& classes,
                         const ForestParams& params, std::uint64_t seed) {
    if (params.n_trees < 1) throw_config("a forest needs at least one tree");
    check_training_set(data);
    if (schema.size() != data.n_features) throw_invariant("feature schema width differs from the training matrix");
    if (classes.size() != data.n_classes) throw_invariant("class table size differs from the training set");

    ForestModel model;
    model.params_ = params;
    model.seed_ = seed;
    model.fingerprint_ = schema.fingerprint();
    model.n_features_ = data.n_features;
    model.classes_ = classes.names();
    model.trees_.resize(params.n_trees);

    const std::size_t n = data.rows();
    auto train_one = [&](std::size_t t) {
        const std::uint64_t tree_seed = derive_seed(seed, t);
        std::vector<std::size_t> rows(n);
        if (params.bootstrap) {
            Rng boot(derive_seed(tree_seed, 0xb0075742ULL));
            for (auto& r : rows) r = boot.uniform_index(n);
        } else {
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        TreeBuilder builder(data, params, tree_seed);
        model.trees_[t] = builder.build(std::move(rows));
    };

    std::size_t threads = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, params.n_trees);
    if (threads <= 1) {
        for (std::size_t t = 0; t < params.n_trees; ++t) train_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < params.n_trees; t = next++) train_one(t);
            });
    }
    return model;
}

Prediction ForestModel::predict(const FeatureSchema& schema, std::span<const double> features) const {
    return predict(schema.fingerprint(), features);
}

Prediction ForestModel::predict(std::uint64_t schema_fingerprint, std::span<const double> features) const {
    if (schema_fingerprint != fingerprint_) throw_config("feature schema does not match the trained model");
    if (features.size() != n_features_)
        throw_config("expected " + std::to_string(n_features_) + " features, got " + std::to_string(features.size()));
    std::vector<std::uint32_t> votes(classes_.size(), 0);
    for (const auto& tree : trees_) ++votes[majority(tree.leaf_for(features).counts)];
    Prediction p;
    p.label = majority(votes);
    p.probabilities.resize(votes.size());
    const double total = static_cast<double>(trees_.size());
    for (std::size_t c = 0; c < votes.size(); ++c) p.probabilities[c] = static_cast<double>(votes[c]) / total;
    return p;
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

constexpr int kModelVersion = 1;

nlohmann::json node_to_json(const DecisionTree& tree, std::size_t i) {
    const auto& n = tree.nodes[i];
    if (n.feature < 0) return {{"counts", n.counts}};
    return {{"feature", n.feature},
            {"threshold", n.threshold},
            {"left", node_to_json(tree, n.left)},
            {"right", node_to_json(tree, n.right)}};
}

std::uint32_t node_from_json(const nlohmann::json& j, DecisionTree& tree) {
    const auto id = static_cast<std::uint32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (j.contains("counts")) {
        tree.nodes[id].counts = j.at("counts").get<std::vector<std::uint32_t>>();
        return id;
    }
    const auto left = node_from_json(j.at("left"), tree);
    const auto right = node_from_json(j.at("right"), tree);
    auto& n = tree.nodes[id];
    n.feature = j.at("feature").get<std::int32_t>();
    n.threshold = j.at("threshold").get<double>();
    n.left = left;
    n.right = right;
    return id;
}

}  // namespace

std::string ForestModel::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(node_to_json(t, 0));
    const nlohmann::json doc{{"format", "harleak-forest"},
                             {"version", kModelVersion},
                             {"schema_fingerprint", fingerprint_},
                             {"n_features", n_features_},
                             {"classes", classes_},
                             {"seed", seed_},
                             {"params",
                              {{"n_trees", params_.n_trees},
                               {"max_depth", params_.max_depth},
                               {"min_leaf", params_.min_leaf},
                               {"bootstrap", params_.bootstrap},
                               {"features_per_split", params_.features_per_split}}},
                             {"trees", std::move(trees)}};
    return doc.dump();
}

ForestModel ForestModel::from_json(const std::string& text) {
    ForestModel m;
    try {
        const auto doc = nlohmann::json::parse(text);
        if (doc.at("format") != "harleak-forest") throw_format("not a harleak forest document");
        if (doc.at("version").get<int>() != kModelVersion)
            throw_format("unsupported model version " + doc.at("version").dump());
        m.fingerprint_ = doc.at("schema_fingerprint").get<std::uint64_t>();
        m.n_features_ = doc.at("n_features").get<std::size_t>();
        m.classes_ = doc.at("classes").get<std::vector<std::string>>();
        m.seed_ = doc.at("seed").get<std::uint64_t>();
        const auto& p = doc.at("params");
        m.params_.n_trees = p.at("n_trees").get<std::size_t>();
        m.params_.max_depth = p.at("max_depth").get<std::size_t>();
        m.params_.min_leaf = p.at("min_leaf").get<std::size_t>();
        m.params_.bootstrap = p.at("bootstrap").get<bool>();
        m.params_.features_per_split = p.at("features_per_split").get<std::size_t>();
        for (const auto& t : doc.at("trees")) {
            DecisionTree tree;
            node_from_json(t, tree);
            m.trees_.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw_format(std::string("malformed model document: ") + e.what());
    }
    return m;
}

// ---------------------------------------------------------------------------
// k-NN

KnnClassifier::KnnClassifier(const TrainingSet& train)
    : n_features_(train.n_features), n_classes_(train.n_classes), y_(train.y) {
    if (train.rows() == 0) throw_config("k-NN needs a non-empty training set");
    const double n = static_cast<double>(train.rows());
    mean_.assign(n_features_, 0.0);
    scale_.assign(n_features_, 0.0);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        const auto row = train.row(i);
        for (std::size_t f = 0; f < n_features_; ++f) mean_[f] += row[f];
    }
    for (auto& m : mean_) m /= n;
    for (std::size_t i = 0; i < train.rows(); ++i) {
        const auto row = train.row(i);
        for (std::size_t f = 0; f < n_features_; ++f) scale_[f] += (row[f] - mean_[f]) * (row[f] - mean_[f]);
    }
    for (auto& s : scale_) {
        s = std::sqrt(s / n);
        if (s == 0.0) s = 1.0;
    }
    z_.resize(train.x.size());
    for (std::size_t i = 0; i < train.x.size(); ++i) {
        const std::size_t f = i % n_features_;
        z_[i] = (train.x[i] - mean_[f]) / scale_[f];
    }
}

ClassId KnnClassifier::predict(std::span<const double> query, std::size_t k) const {
    const std::size_t n = y_.size();
    if (k < 1 || k > n) throw_config("k must lie in [1, " + std::to_string(n) + "]");
    if (query.size() != n_features_) throw_config("query has the wrong number of features");
    std::vector<double> q(n_features_);
    for (std::size_t f = 0; f < n_features_; ++f) q[f] = (query[f] - mean_[f]) / scale_[f];

    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        const double* row = z_.data() + i * n_features_;
        for (std::size_t f = 0; f < n_features_; ++f) d += (row[f] - q[f]) * (row[f] - q[f]);
        dist[i] = {d, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<std::uint32_t> votes(n_classes_, 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[y_[dist[i].second]];
    return majority(votes);
}

}  // namespace harleak
