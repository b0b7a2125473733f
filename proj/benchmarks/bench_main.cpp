#include <benchmark/benchmark.h>

#include <algorithm>

#include "harleak/audit.hpp"
#include "harleak/features.hpp"
#include "harleak/forest.hpp"
#include "harleak/rng.hpp"
#include "harleak/segment.hpp"
#include "harleak/split.hpp"
#include "harleak/synth.hpp"

using namespace harleak;

namespace {

std::vector<Window> half_overlap(std::size_t n) {
    std::vector<Window> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back({"s", {i * 64, i * 64 + 128}, 0, "s"});
    return w;
}

void BM_LeakageIndexed(benchmark::State& state) {
    const auto w = half_overlap(static_cast<std::size_t>(state.range(0)));
    const std::vector<unsigned> ratios{80, 20};
    const auto a = random_shuffle_split(w.size(), ratios, 1);
    const auto train = span_refs(w, a.at("train").indices);
    const auto test = span_refs(w, a.at("test").indices);
    for (auto _ : state) benchmark::DoNotOptimize(leakage_fraction(train, test));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeakageIndexed)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_LeakagePairwise(benchmark::State& state) {
    const auto w = half_overlap(static_cast<std::size_t>(state.range(0)));
    const std::vector<unsigned> ratios{80, 20};
    const auto a = random_shuffle_split(w.size(), ratios, 1);
    const auto& tr = a.at("train").indices;
    const auto& te = a.at("test").indices;
    for (auto _ : state) {
        std::size_t leaking = 0;
        for (auto t : te)
            leaking += std::any_of(tr.begin(), tr.end(), [&](std::size_t r) { return raw_overlap(w[t], w[r]) > 0; });
        benchmark::DoNotOptimize(leaking);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeakagePairwise)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_SegmentAndExtract(benchmark::State& state) {
    AmbientSynthConfig cfg;
    cfg.days = 1;
    cfg.events_per_day = static_cast<std::size_t>(state.range(0));
    const auto data = generate_ambient_stream(cfg);
    const auto& stream = data.streams.front();
    const auto sensors = SensorIndex::from_streams(data.streams);
    const EventFeatureExtractor extractor(sensors, data.locations);
    const auto mi = compute_mi_matrix(stream.events, sensors);
    const SegmentationSpec spec{SegmentMode::EventCount, 30, 1, LabelRule::LastEvent, GroupRule::ByDate};
    for (auto _ : state) {
        const auto windows = segment_events(stream, spec);
        double sink = 0.0;
        for (const auto& w : windows)
            sink += extractor.extract(std::span(stream.events).subspan(w.span.start, w.span.length()), mi)[0];
        benchmark::DoNotOptimize(sink);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentAndExtract)->Arg(1000)->Arg(10000);

void BM_ForestTrain(benchmark::State& state) {
    Rng rng(3);
    TrainingSet t;
    t.n_features = 40;
    t.n_classes = 8;
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
        const auto label = static_cast<ClassId>(rng.uniform_index(8));
        for (std::size_t f = 0; f < t.n_features; ++f) t.x.push_back(rng.normal() + (f % 8 == label ? 2.0 : 0.0));
        t.y.push_back(label);
    }
    std::vector<std::string> names;
    for (std::size_t f = 0; f < t.n_features; ++f) names.push_back("f" + std::to_string(f));
    const FeatureSchema schema(names);
    ClassTable classes;
    for (int c = 0; c < 8; ++c) classes.intern("c" + std::to_string(c));
    ForestParams p;
    p.n_trees = 20;
    p.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(train_forest(t, schema, classes, p, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForestTrain)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
