#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "harleak/audit.hpp"
#include "harleak/error.hpp"
#include "harleak/segment.hpp"
#include "harleak/split.hpp"
#include "oracles.hpp"

using namespace harleak;

namespace {
std::vector<oracle::Span> plain(const std::vector<Window>& w, std::span<const std::size_t> idx) {
    std::vector<oracle::Span> out;
    for (auto i : idx) out.push_back({w[i].source_id, w[i].span.start, w[i].span.end});
    return out;
}
std::vector<Window> sliding(std::size_t n, std::size_t size, std::size_t step, const std::string& src = "s") {
    std::vector<Window> out;
    for (std::size_t s = 0; s + size <= n; s += step) out.push_back({src, {s, s + size}, 0, src});
    return out;
}
}  // namespace

TEST(Leakage, BothNeighboursOverlap) {
    const std::vector<SpanRef> train{{"s", {0, 6}}, {"s", {4, 10}}}, test{{"s", {2, 8}}};
    EXPECT_DOUBLE_EQ(leakage_fraction(train, test), 1.0);
}

TEST(Leakage, DifferentSourcesNeverLeak) {
    const std::vector<SpanRef> train{{"a", {0, 100}}}, test{{"b", {0, 100}}, {"b", {50, 150}}};
    EXPECT_DOUBLE_EQ(leakage_fraction(train, test), 0.0);
}

TEST(Leakage, EmptyTestSetThrows) {
    const std::vector<SpanRef> train{{"a", {0, 1}}};
    EXPECT_THROW(leakage_fraction(train, {}), Error);
}

TEST(Leakage, TouchingSpansDoNotLeakButAreAdjacent) {
    const std::vector<SpanRef> train{{"s", {0, 10}}}, test{{"s", {10, 20}}, {"s", {25, 35}}, {"s", {40, 50}}};
    const auto c = leakage_counts(train, test);
    EXPECT_EQ(c.leaking, 0u);
    EXPECT_EQ(c.adjacent, 1u);  // default k is the window length, 10
}

TEST(Leakage, NearDuplicateNeedsHalfTheWindow) {
    const std::vector<SpanRef> train{{"s", {0, 10}}};
    const std::vector<SpanRef> test{{"s", {5, 15}}, {"s", {6, 16}}};
    const auto c = leakage_counts(train, test);
    EXPECT_EQ(c.leaking, 2u);
    EXPECT_EQ(c.near_duplicate, 1u);
}

TEST(Leakage, MatchesPairwiseOracleOnRandomSplits) {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t size = 1 + rng.uniform_index(50);
        const std::size_t step = 1 + rng.uniform_index(2 * size);
        std::vector<Window> w;
        const std::size_t sources = 1 + rng.uniform_index(3);
        for (std::size_t s = 0; s < sources; ++s) {
            auto part = sliding(size + rng.uniform_index(30 * size), size, std::min(step, size), "src" + std::to_string(s));
            if (step > size)  // sparse, non-touching windows
                for (std::size_t i = 0; i < part.size(); ++i) part[i].span = {i * step, i * step + size};
            w.insert(w.end(), part.begin(), part.end());
        }
        if (w.size() < 5) continue;
        const std::vector<unsigned> r{80, 20};
        const auto a = random_shuffle_split(w.size(), r, trial);
        const auto& tr = a.at("train").indices;
        const auto& te = a.at("test").indices;
        const double got = leakage_fraction(span_refs(w, tr), span_refs(w, te));
        EXPECT_EQ(got, oracle::leakage_fraction(plain(w, tr), plain(w, te))) << "trial " << trial;
    }
}

TEST(Leakage, MaxOverlapMatchesEnumeration) {
    Rng rng(8);
    std::vector<SpanRef> train;
    std::vector<oracle::Span> train_plain;
    for (int i = 0; i < 200; ++i) {
        const std::size_t a = rng.uniform_index(1000), len = 1 + rng.uniform_index(80);
        train.push_back({"s", {a, a + len}});
        train_plain.push_back({"s", a, a + len});
    }
    const SpanIndex idx(train);
    for (int q = 0; q < 300; ++q) {
        const std::size_t a = rng.uniform_index(1100), len = 1 + rng.uniform_index(80);
        std::size_t expected = 0;
        for (const auto& t : train_plain) expected = std::max(expected, oracle::shared_indices({"s", a, a + len}, t));
        EXPECT_EQ(idx.max_overlap({"s", {a, a + len}}), expected);
        EXPECT_EQ(idx.overlaps({"s", {a, a + len}}), expected > 0);
    }
}

TEST(Leakage, SmallerStepNeverLowersLeakage) {
    const std::size_t size = 64;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        double previous = -1.0;
        for (std::size_t step : {size, size / 2, size / 4, std::size_t{1}}) {
            const auto w = sliding(64 * 40, size, step);
            const std::vector<unsigned> r{80, 20};
            const auto a = random_shuffle_split(w.size(), r, seed);
            const double f = leakage_fraction(span_refs(w, a.at("train").indices), span_refs(w, a.at("test").indices));
            EXPECT_GE(f, previous) << "step " << step;
            previous = f;
        }
    }
}

TEST(OverlapHistogram, SingleSpikeAtSizeMinusStep) {
    const auto h128 = overlap_histogram(sliding(1024, 128, 64));
    ASSERT_EQ(h128.size(), 1u);
    EXPECT_EQ(h128.begin()->first, 64u);
    EXPECT_EQ(h128.begin()->second, sliding(1024, 128, 64).size() - 1);
    EXPECT_EQ(overlap_histogram(sliding(300, 30, 30)).begin()->first, 0u);
    EXPECT_EQ(overlap_histogram(sliding(300, 30, 1)).begin()->first, 29u);
    EXPECT_TRUE(overlap_histogram(sliding(30, 30, 1)).empty());
}

TEST(GroupIntegrity, GroupKFoldCleanRandomShuffleNot) {
    const auto ws = fixtures::aligned_windows(77, 6);
    const auto items = split_items(ws.windows);
    EXPECT_TRUE(group_integrity(group_kfold(items, 3), ws.windows).empty());
    const std::vector<unsigned> r{80, 20};
    EXPECT_FALSE(group_integrity(random_shuffle_split(ws.windows.size(), r, 1), ws.windows).empty());
}

TEST(GroupIntegrity, SingletonGroupsAlwaysClean) {
    std::vector<Window> w;
    for (std::size_t i = 0; i < 50; ++i) w.push_back({"s", {i, i + 1}, 0, "g" + std::to_string(i)});
    const std::vector<unsigned> r{80, 20};
    EXPECT_TRUE(group_integrity(random_shuffle_split(50, r, 3), w).empty());
}

TEST(GroupIntegrity, ReportsEveryPartitionAGroupTouches) {
    std::vector<Window> w{{"s", {0, 1}, 0, "x"}, {"s", {1, 2}, 0, "x"}, {"s", {2, 3}, 0, "y"}};
    const FoldAssignment a{SplitScheme::RandomShuffle, 0, {{"train", {0, 2}}, {"test", {1}}}};
    const auto v = group_integrity(a, w);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].group_key, "x");
    EXPECT_EQ(v[0].partitions, (std::vector<std::string>{"train", "test"}));
}
