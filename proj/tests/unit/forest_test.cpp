#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <numeric>

#include "fixtures.hpp"
#include "harleak/error.hpp"
#include "harleak/forest.hpp"

using namespace harleak;

namespace {
TrainingSet table(const std::vector<std::vector<double>>& x, const std::vector<ClassId>& y, std::size_t classes) {
    TrainingSet t;
    t.n_features = x.front().size();
    t.n_classes = classes;
    for (const auto& r : x) t.x.insert(t.x.end(), r.begin(), r.end());
    t.y = y;
    return t;
}
ForestParams exhaustive() {
    ForestParams p;
    p.min_leaf = 1;
    p.features_per_split = 0;
    return p;
}
double train_accuracy(const DecisionTree& tree, const TrainingSet& t) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) hits += majority(tree.leaf_for(t.row(i)).counts) == t.y[i];
    return static_cast<double>(hits) / static_cast<double>(t.rows());
}
ClassTable classes(std::size_t n) {
    ClassTable c;
    for (std::size_t i = 0; i < n; ++i) c.intern("c" + std::to_string(i));
    return c;
}
bool same_tree(const DecisionTree& a, const DecisionTree& b) {
    if (a.nodes.size() != b.nodes.size()) return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const auto &x = a.nodes[i], &y = b.nodes[i];
        if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left || x.right != y.right ||
            x.counts != y.counts)
            return false;
    }
    return true;
}
}  // namespace

TEST(Tree, SingleClassIsOneLeaf) {
    const auto t = table({{1.0}, {2.0}, {3.0}}, {1, 1, 1}, 2);
    const auto tree = train_tree(t, exhaustive(), 1);
    EXPECT_EQ(tree.nodes.size(), 1u);
    EXPECT_EQ(tree.depth(), 0u);
}

TEST(Tree, OneDimensionalSplitAtMidpoint) {
    const auto t = table({{-3.0}, {-1.0}, {2.0}, {4.0}}, {0, 0, 1, 1}, 2);
    const auto tree = train_tree(t, exhaustive(), 1);
    EXPECT_EQ(tree.depth(), 1u);
    EXPECT_DOUBLE_EQ(tree.nodes[0].threshold, 0.5);
    EXPECT_DOUBLE_EQ(train_accuracy(tree, t), 1.0);
}

TEST(Tree, XorNeedsTwoLevels) {
    const std::vector<std::vector<double>> x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    const std::vector<ClassId> y{0, 0, 1, 1};
    // Every depth-1 stump on the midpoint thresholds gets half the points
    // wrong; a depth-2 tree on (x0, x1) gets all of them.
    for (int f = 0; f < 2; ++f) {
        int left0 = 0, left1 = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (x[i][f] <= 0.5) (y[i] == 0 ? left0 : left1)++;
        EXPECT_EQ(left0, left1);
    }
    const auto t = table(x, y, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto tree = train_tree(t, exhaustive(), seed);
        EXPECT_DOUBLE_EQ(train_accuracy(tree, t), 1.0);
        EXPECT_EQ(tree.depth(), 2u);
    }
}

TEST(Tree, NonFiniteFeatureRejected) {
    const auto t = table({{1.0}, {std::nan("")}}, {0, 1}, 2);
    try {
        train_tree(t, exhaustive(), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Format);
    }
}

TEST(Tree, LeafCountsSumToRoutedRows) {
    const auto data = fixtures::blobs(40, 3, 3, 5, 2.0);
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 3);
    ForestParams p;
    p.max_depth = 3;
    const auto tree = train_tree(t, p, 9);
    std::vector<std::uint32_t> routed(tree.nodes.size(), 0);
    for (std::size_t i = 0; i < t.rows(); ++i) ++routed[static_cast<std::size_t>(&tree.leaf_for(t.row(i)) - tree.nodes.data())];
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
        if (!tree.is_leaf(n)) continue;
        const auto& c = tree.nodes[n].counts;
        EXPECT_EQ(std::accumulate(c.begin(), c.end(), 0u), routed[n]);
    }
    EXPECT_LE(tree.depth(), 3u);
}

TEST(Forest, OneTreeWithoutBootstrapEqualsTrainTree) {
    const auto data = fixtures::blobs(30, 2, 4, 1, 1.0);
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 2);
    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    const auto model = train_forest(t, fixtures::numbered_schema(4), classes(2), p, 77);
    EXPECT_TRUE(same_tree(model.trees()[0], train_tree(t, p, derive_seed(77, 0))));
}

TEST(Forest, SameSeedSameBytesAndThreadCountIrrelevant) {
    const auto data = fixtures::blobs(50, 3, 4, 2, 2.0);
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 3);
    ForestParams p;
    p.n_trees = 20;
    p.threads = 1;
    const auto schema = fixtures::numbered_schema(4);
    const auto a = train_forest(t, schema, classes(3), p, 5).to_json();
    p.threads = 4;
    EXPECT_EQ(train_forest(t, schema, classes(3), p, 5).to_json(), a);
    EXPECT_NE(train_forest(t, schema, classes(3), p, 6).to_json(), a);
}

TEST(Forest, SerializationRoundTrip) {
    const auto data = fixtures::blobs(30, 2, 3, 3);
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 2);
    ForestParams p;
    p.n_trees = 5;
    const auto schema = fixtures::numbered_schema(3);
    const auto model = train_forest(t, schema, classes(2), p, 1);
    const auto back = ForestModel::from_json(model.to_json());
    EXPECT_EQ(back.to_json(), model.to_json());
    for (std::size_t i = 0; i < t.rows(); ++i)
        EXPECT_EQ(back.predict(schema, t.row(i)).probabilities, model.predict(schema, t.row(i)).probabilities);
    const auto doc = nlohmann::json::parse(model.to_json());
    EXPECT_EQ(doc["format"], "harleak-forest");
    EXPECT_TRUE(doc["trees"][0].contains("left") || doc["trees"][0].contains("counts"));
}

TEST(Forest, SeparableBlobsGeneralise) {
    const auto train = fixtures::blobs(100, 2, 2, 10);
    const auto test = fixtures::blobs(100, 2, 2, 11);
    const auto t = TrainingSet::from_instances(train, fixtures::iota(train.size()), 2);
    ForestParams p;
    p.n_trees = 50;
    const auto schema = fixtures::numbered_schema(2);
    const auto model = train_forest(t, schema, classes(2), p, 3);
    std::size_t hits = 0;
    for (const auto& inst : test) {
        const auto pred = model.predict(schema, inst.features);
        hits += pred.label == inst.label;
        double sum = 0;
        for (double q : pred.probabilities) {
            EXPECT_GE(q, 0.0);
            sum += q;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    EXPECT_GE(static_cast<double>(hits) / test.size(), 0.95);
}

TEST(Forest, VoteTiesGoToLowestClass) {
    const std::string doc = R"({"format":"harleak-forest","version":1,"schema_fingerprint":7,"n_features":1,
        "classes":["a","b","c","d"],"seed":0,
        "params":{"n_trees":2,"max_depth":1,"min_leaf":1,"bootstrap":false,"features_per_split":1},
        "trees":[{"counts":[0,3,0,0]},{"counts":[0,0,0,5]}]})";
    const auto m = ForestModel::from_json(doc);
    const std::vector<double> x{0.0};
    const auto p = m.predict(std::uint64_t{7}, x);
    EXPECT_EQ(p.label, 1u);
    EXPECT_EQ(p.probabilities, (std::vector<double>{0, 0.5, 0, 0.5}));

    const std::string unanimous = R"({"format":"harleak-forest","version":1,"schema_fingerprint":7,"n_features":1,
        "classes":["a","b","c"],"seed":0,
        "params":{"n_trees":2,"max_depth":1,"min_leaf":1,"bootstrap":false,"features_per_split":1},
        "trees":[{"counts":[0,0,4]},{"counts":[1,0,2]}]})";
    EXPECT_DOUBLE_EQ(ForestModel::from_json(unanimous).predict(std::uint64_t{7}, x).probabilities[2], 1.0);
}

TEST(Forest, SchemaMismatchRejected) {
    const auto data = fixtures::blobs(10, 2, 2, 3);
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 2);
    ForestParams p;
    p.n_trees = 2;
    const auto model = train_forest(t, fixtures::numbered_schema(2), classes(2), p, 1);
    EXPECT_THROW(model.predict(FeatureSchema({"x", "y"}), t.row(0)), Error);
    p.n_trees = 0;
    EXPECT_THROW(train_forest(t, fixtures::numbered_schema(2), classes(2), p, 1), Error);
}

TEST(Knn, ExactMatchAndMajority) {
    const auto t = table({{0, 0}, {10, 10}, {10, 11}, {11, 10}}, {0, 1, 1, 1}, 2);
    const KnnClassifier knn(t);
    const std::vector<double> q{0, 0};
    EXPECT_EQ(knn.predict(q, 1), 0u);
    EXPECT_EQ(knn.predict(q, 4), 1u);
    EXPECT_THROW(knn.predict(q, 5), Error);
}

TEST(Knn, DuplicatedTestWindowsAreAlwaysRecovered) {
    Rng rng(3);
    auto data = fixtures::blobs(60, 4, 3, 8, 0.0);  // labels carry no signal
    const auto t = TrainingSet::from_instances(data, fixtures::iota(data.size()), 4);
    const KnnClassifier knn(t);
    for (std::size_t i = 0; i < data.size(); ++i) EXPECT_EQ(knn.predict(data[i].features, 1), data[i].label);
}
