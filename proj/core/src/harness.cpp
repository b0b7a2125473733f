#include "harleak/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "harleak/error.hpp"
#include "harleak/features.hpp"
#include "harleak/serialize.hpp"

namespace harleak {

using nlohmann::json;

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::string config_fingerprint(const json& doc) {
    const std::string canonical = doc.dump();  // object keys are sorted
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Config

void ExperimentConfig::override_seed(std::uint64_t s) {
    seed = s;
    for (auto& split : splits) split.seed = s;
    if (auto* a = std::get_if<AmbientSynthConfig>(&dataset)) a->seed = s;
    if (auto* b = std::get_if<BodySynthConfig>(&dataset)) b->seed = s;
    source["seed"] = s;
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    try {
        if (!doc.is_object()) throw_config("experiment config must be a JSON object");
        cfg.source = doc;
        cfg.seed = doc.value("seed", std::uint64_t{42});

        const auto& ds = doc.at("dataset");
        const int sources = static_cast<int>(ds.contains("manifest")) + static_cast<int>(ds.contains("synth_ambient")) +
                            static_cast<int>(ds.contains("synth_body"));
        if (sources != 1) throw_config("dataset needs exactly one of 'manifest', 'synth_ambient', 'synth_body'");
        if (ds.contains("manifest")) {
            std::filesystem::path p = ds["manifest"].get<std::string>();
            cfg.dataset = p.is_absolute() ? p : base_dir / p;
        } else if (ds.contains("synth_ambient")) {
            json j = ds["synth_ambient"];
            if (!j.contains("seed")) j["seed"] = cfg.seed;
            cfg.dataset = ambient_config_from_json(j);
        } else {
            json j = ds["synth_body"];
            if (!j.contains("seed")) j["seed"] = cfg.seed;
            cfg.dataset = body_config_from_json(j);
        }

        cfg.segmentation = segmentation_from_json(doc.at("segmentation"));
        const std::string features = doc.value(
            "features", std::string(cfg.segmentation.mode == SegmentMode::EventCount ? "milan" : "imu-stats"));
        if (features == "milan")
            cfg.features = FeatureSet::Milan;
        else if (features == "imu-stats")
            cfg.features = FeatureSet::ImuStats;
        else
            throw_config("unknown feature set '" + features + "'");

        std::vector<json> split_docs;
        if (doc.contains("split")) split_docs.push_back(doc["split"]);
        if (doc.contains("splits"))
            for (const auto& s : doc["splits"]) split_docs.push_back(s);
        if (split_docs.empty()) throw_config("config declares no split");
        for (auto s : split_docs) {
            if (!s.contains("seed")) s["seed"] = cfg.seed;
            cfg.splits.push_back(split_spec_from_json(s));
        }

        if (doc.contains("classifier")) cfg.classifier = forest_params_from_json(doc["classifier"]);
        if (doc.contains("output_dir")) {
            std::filesystem::path out = doc["output_dir"].get<std::string>();
            cfg.output_dir = out.is_absolute() ? out : base_dir / out;
        }
    } catch (const json::exception& e) {
        throw_config(std::string("experiment config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw_config("config file not found: '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw_config("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    explicit Stopwatch(std::map<std::string, double>& sink) : sink_(sink) {}
    template <typename Fn>
    decltype(auto) time(const std::string& stage, Fn&& fn) {
        const auto t0 = Clock::now();
        struct Record {
            std::map<std::string, double>& sink;
            const std::string& stage;
            Clock::time_point t0;
            ~Record() { sink[stage] += std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }
        } record{sink_, stage, t0};
        try {
            return fn();
        } catch (const Error& e) {
            throw Error(e.kind(), stage + ": " + e.what());
        }
    }

private:
    std::map<std::string, double>& sink_;
};

struct Prepared {
    Dataset data;
    std::vector<Window> windows;
    std::vector<std::size_t> window_stream;
    FeatureSchema schema;
    std::optional<EventFeatureExtractor> extractor;
    std::vector<LabeledInstance> fixed_instances;  // split-independent features
    std::map<std::string, double> timings_ms;
};

Dataset load_dataset(const ExperimentConfig& cfg) {
    if (const auto* path = std::get_if<std::filesystem::path>(&cfg.dataset)) return load_manifest(*path);
    Dataset ds;
    if (const auto* a = std::get_if<AmbientSynthConfig>(&cfg.dataset)) {
        auto gen = generate_ambient_stream(*a);
        ds.name = "synth-ambient";
        ds.kind = DatasetKind::EventLog;
        ds.classes = std::move(gen.classes);
        ds.locations = std::move(gen.locations);
        ds.event_streams = std::move(gen.streams);
    } else {
        auto gen = generate_body_stream(std::get<BodySynthConfig>(cfg.dataset));
        ds.name = "synth-body";
        ds.kind = DatasetKind::SampleTable;
        ds.classes = std::move(gen.classes);
        ds.channel_names = std::move(gen.channel_names);
        ds.sample_streams = std::move(gen.streams);
        ds.sample_rate_hz = std::get<BodySynthConfig>(cfg.dataset).sample_rate_hz;
    }
    return ds;
}

LabeledInstance instance_for(const Window& w, std::vector<double> features) {
    return LabeledInstance{std::move(features), w.label, w.group_key, w.span, w.source_id};
}

Prepared prepare(const ExperimentConfig& cfg, bool with_features) {
    Prepared p;
    Stopwatch sw(p.timings_ms);
    p.data = sw.time("ingest", [&] { return load_dataset(cfg); });

    sw.time("segment", [&] {
        const bool events = p.data.kind == DatasetKind::EventLog;
        if (events != (cfg.segmentation.mode == SegmentMode::EventCount))
            throw_config("segmentation mode '" + std::string(to_string(cfg.segmentation.mode)) +
                         "' does not fit this dataset");
        if (events) {
            for (std::size_t s = 0; s < p.data.event_streams.size(); ++s) {
                auto w = segment_events(p.data.event_streams[s], cfg.segmentation);
                p.window_stream.insert(p.window_stream.end(), w.size(), s);
                p.windows.insert(p.windows.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
            }
        } else {
            for (std::size_t s = 0; s < p.data.sample_streams.size(); ++s) {
                auto w = segment_samples(p.data.sample_streams[s], cfg.segmentation);
                p.window_stream.insert(p.window_stream.end(), w.size(), s);
                p.windows.insert(p.windows.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
            }
        }
        if (p.windows.empty()) throw_format("segmentation produced no windows");
    });

    if (!with_features) return p;
    sw.time("features", [&] {
        if (cfg.features == FeatureSet::Milan) {
            if (p.data.kind != DatasetKind::EventLog) throw_config("feature set 'milan' needs an event-log dataset");
            p.extractor.emplace(SensorIndex::from_streams(p.data.event_streams), p.data.locations);
            p.schema = p.extractor->schema();
        } else {
            if (p.data.kind != DatasetKind::SampleTable)
                throw_config("feature set 'imu-stats' needs a sample-table dataset");
            p.schema = sample_stats_schema(p.data.channel_names);
            p.fixed_instances.reserve(p.windows.size());
            for (std::size_t i = 0; i < p.windows.size(); ++i) {
                const auto& w = p.windows[i];
                const auto& rows = p.data.sample_streams[p.window_stream[i]].rows;
                p.fixed_instances.push_back(
                    instance_for(w, sample_window_stats(std::span(rows).subspan(w.span.start, w.span.length()))));
            }
        }
    });
    return p;
}

// Features for every window, with MI fit on the events under `train` only.
std::vector<LabeledInstance> event_instances(const Prepared& p, std::span<const std::size_t> train,
                                             std::vector<std::string>& warnings) {
    const auto& streams = p.data.event_streams;
    std::vector<std::vector<char>> covered(streams.size());
    for (std::size_t s = 0; s < streams.size(); ++s) covered[s].assign(streams[s].events.size(), 0);
    for (std::size_t i : train) {
        const auto& w = p.windows[i];
        auto& cov = covered[p.window_stream[i]];
        std::fill(cov.begin() + static_cast<std::ptrdiff_t>(w.span.start),
                  cov.begin() + static_cast<std::ptrdiff_t>(w.span.end), 1);
    }
    std::vector<std::span<const SensorEvent>> runs;
    for (std::size_t s = 0; s < streams.size(); ++s) {
        const auto& cov = covered[s];
        std::size_t i = 0;
        while (i < cov.size()) {
            if (!cov[i]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < cov.size() && cov[j]) ++j;
            runs.push_back(std::span(streams[s].events).subspan(i, j - i));
            i = j;
        }
    }
    const MIMatrix mi = compute_mi_matrix(runs, p.extractor->sensors(), &warnings);

    std::vector<LabeledInstance> out;
    out.reserve(p.windows.size());
    for (std::size_t i = 0; i < p.windows.size(); ++i) {
        const auto& w = p.windows[i];
        const auto& events = streams[p.window_stream[i]].events;
        out.push_back(instance_for(w, p.extractor->extract(std::span(events).subspan(w.span.start, w.span.length()), mi)));
    }
    return out;
}

void add_violations(std::vector<IntegrityViolation>& into, std::vector<IntegrityViolation> found) {
    for (auto& v : found) {
        const bool dup = std::any_of(into.begin(), into.end(), [&](const auto& o) { return o.group_key == v.group_key; });
        if (!dup) into.push_back(std::move(v));
    }
}

RunReport run_split(const ExperimentConfig& cfg, const Prepared& p, const SplitSpec& spec, std::string label) {
    RunReport r;
    r.config_fingerprint = config_fingerprint(cfg.source);
    r.label = std::move(label);
    r.split = spec;
    r.feature_names = p.schema.names();
    r.classes = p.data.classes.names();
    r.instance_count = p.windows.size();
    r.timings_ms = p.timings_ms;
    Stopwatch sw(r.timings_ms);

    const auto items = split_items(p.windows);
    r.assignments = sw.time("split", [&] { return make_assignments(spec, items, &r.warnings); });
    for (const auto& a : r.assignments) a.validate(p.windows.size());
    const auto rounds = evaluation_rounds(spec, r.assignments);
    for (const auto& a : r.assignments) add_violations(r.leakage.violations, group_integrity(a, p.windows));

    for (const auto& round : rounds) {
        if (round.test.empty()) throw_config("evaluation round has an empty test partition");
        if (round.train.empty()) throw_config("evaluation round has an empty training partition");
        const auto train_refs = span_refs(p.windows, round.train);
        const auto test_refs = span_refs(p.windows, round.test);
        const auto counts = sw.time("audit", [&] { return leakage_counts(train_refs, test_refs); });
        r.leakage.counts.test += counts.test;
        r.leakage.counts.leaking += counts.leaking;
        r.leakage.counts.near_duplicate += counts.near_duplicate;
        r.leakage.counts.adjacent += counts.adjacent;

        std::vector<LabeledInstance> fitted;
        const std::vector<LabeledInstance>* instances = &p.fixed_instances;
        if (p.extractor) {
            fitted = sw.time("features", [&] { return event_instances(p, round.train, r.warnings); });
            instances = &fitted;
        }
        const auto train_set = TrainingSet::from_instances(*instances, round.train, p.data.classes.size());
        const auto model = sw.time("train", [&] {
            return train_forest(train_set, p.schema, p.data.classes, cfg.classifier, cfg.seed);
        });
        sw.time("predict", [&] {
            for (std::size_t i : round.test) {
                r.test_indices.push_back(i);
                r.truth.push_back((*instances)[i].label);
                r.predicted.push_back(model.predict(p.schema, (*instances)[i].features).label);
            }
            return 0;
        });
        r.train_count += round.train.size();
    }
    r.test_count = r.test_indices.size();

    r.confusion = confusion(r.truth, r.predicted, r.classes);
    r.metrics.balanced_accuracy = balanced_accuracy(r.confusion);
    r.metrics.weighted_f1 = weighted_f1(r.confusion);
    r.metrics.accuracy = accuracy(r.confusion);
    r.metrics.per_class_f1 = per_class_f1(r.confusion);
    return r;
}

json violations_json(const std::vector<IntegrityViolation>& violations) {
    json out = json::array();
    for (const auto& v : violations) out.push_back({{"group", v.group_key}, {"partitions", v.partitions}});
    return out;
}

json leakage_json(const LeakageReport& l) {
    json j{{"test_instances", l.counts.test},
           {"leaking_instances", l.counts.leaking},
           {"violation_count", l.violations.size()},
           {"violations", violations_json(l.violations)}};
    if (l.counts.test > 0) {
        j["leakage_fraction"] = round4(l.counts.fraction());
        j["near_duplicate_fraction"] = round4(l.counts.near_duplicate_fraction());
        j["adjacent_fraction"] = round4(l.counts.adjacent_fraction());
    }
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_io("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw_io("error writing '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw_io("cannot create directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

// ---------------------------------------------------------------------------

RunReport run(const ExperimentConfig& config) {
    if (config.splits.empty()) throw_config("run needs a split spec");
    const auto p = prepare(config, true);
    return run_split(config, p, config.splits.front(), std::string(to_string(config.splits.front().scheme)));
}

GapReport compare(const ExperimentConfig& config) {
    if (config.splits.size() != 2) throw_config("compare needs exactly two split specs (biased, unbiased)");
    const auto p = prepare(config, true);
    std::string first(to_string(config.splits[0].scheme));
    std::string second(to_string(config.splits[1].scheme));
    if (first == second) second += "-2";
    GapReport g{run_split(config, p, config.splits[0], first), run_split(config, p, config.splits[1], second)};
    g.balanced_accuracy_gap = g.biased.metrics.balanced_accuracy - g.unbiased.metrics.balanced_accuracy;
    g.weighted_f1_gap = g.biased.metrics.weighted_f1 - g.unbiased.metrics.weighted_f1;
    return g;
}

AuditReport audit(const ExperimentConfig& config) {
    if (config.splits.size() != 1) throw_config("audit needs exactly one split spec");
    const auto p = prepare(config, false);
    AuditReport a;
    a.config_fingerprint = config_fingerprint(config.source);
    a.split = config.splits.front();
    a.segmentation = config.segmentation;
    a.window_count = p.windows.size();
    a.histogram = overlap_histogram(p.windows);

    const auto items = split_items(p.windows);
    const auto assignments = make_assignments(a.split, items);
    for (const auto& asg : assignments) {
        asg.validate(p.windows.size());
        add_violations(a.leakage.violations, group_integrity(asg, p.windows));
    }
    for (const auto& round : evaluation_rounds(a.split, assignments)) {
        const auto c = leakage_counts(span_refs(p.windows, round.train), span_refs(p.windows, round.test));
        a.leakage.counts.test += c.test;
        a.leakage.counts.leaking += c.leaking;
        a.leakage.counts.near_duplicate += c.near_duplicate;
        a.leakage.counts.adjacent += c.adjacent;
    }
    if (a.leakage.counts.test == 0) throw_config("audit: the split leaves the test partition empty");
    return a;
}

// ---------------------------------------------------------------------------
// Reports

json RunReport::to_json() const {
    json per_class = json::object();
    for (std::size_t c = 0; c < classes.size(); ++c) per_class[classes[c]] = round4(metrics.per_class_f1[c]);
    json timings = json::object();
    for (const auto& [k, v] : timings_ms) timings[k] = round4(v);
    return {{"kind", "run"},
            {"config_fingerprint", config_fingerprint},
            {"label", label},
            {"split", harleak::to_json(split)},
            {"instances", instance_count},
            {"train_instances", train_count},
            {"test_instances", test_count},
            {"feature_schema", feature_names},
            {"classes", classes},
            {"metrics",
             {{"balanced_accuracy", round4(metrics.balanced_accuracy)},
              {"weighted_f1", round4(metrics.weighted_f1)},
              {"accuracy", round4(metrics.accuracy)},
              {"per_class_f1", std::move(per_class)}}},
            {"confusion", harleak::to_json(confusion)},
            {"leakage", leakage_json(leakage)},
            {"assignment_file", "assignment_" + label + ".json"},
            {"predictions_file", "predictions_" + label + ".csv"},
            {"confusion_file", "confusion_" + label + ".csv"},
            {"timings_ms", std::move(timings)},
            {"warnings", warnings}};
}

json GapReport::to_json() const {
    return {{"kind", "compare"},
            {"config_fingerprint", biased.config_fingerprint},
            {"biased", biased.to_json()},
            {"unbiased", unbiased.to_json()},
            {"gap", {{"balanced_accuracy", round4(balanced_accuracy_gap)}, {"weighted_f1", round4(weighted_f1_gap)}}},
            {"leakage_fraction",
             {{"biased", round4(biased.leakage.counts.fraction())},
              {"unbiased", round4(unbiased.leakage.counts.fraction())}}}};
}

json AuditReport::to_json() const {
    json hist = json::object();
    for (const auto& [overlap, n] : histogram) hist[std::to_string(overlap)] = n;
    json doc = leakage_json(leakage);
    doc["kind"] = "audit";
    doc["config_fingerprint"] = config_fingerprint;
    doc["histogram"] = std::move(hist);
    doc["parameters"] = {{"segmentation", harleak::to_json(segmentation)},
                         {"split", harleak::to_json(split)},
                         {"windows", window_count}};
    return doc;
}

void write_outputs(const RunReport& report, const std::filesystem::path& dir) {
    ensure_dir(dir);
    write_file(dir / "report.json", report.to_json().dump(2) + "\n");
    write_file(dir / ("confusion_" + report.label + ".csv"), report.confusion.to_csv());
    json assignments = json::array();
    for (const auto& a : report.assignments) assignments.push_back(to_json(a));
    write_file(dir / ("assignment_" + report.label + ".json"),
               json{{"split", to_json(report.split)}, {"assignments", std::move(assignments)}}.dump() + "\n");
    std::string csv = "index,truth,predicted\n";
    for (std::size_t i = 0; i < report.test_indices.size(); ++i)
        csv += std::to_string(report.test_indices[i]) + "," + report.classes[report.truth[i]] + "," +
               report.classes[report.predicted[i]] + "\n";
    write_file(dir / ("predictions_" + report.label + ".csv"), csv);
}

void write_outputs(const GapReport& report, const std::filesystem::path& dir) {
    ensure_dir(dir);
    for (const auto* r : {&report.biased, &report.unbiased}) {
        write_outputs(*r, dir);  // per-run files; report.json is replaced below
    }
    write_file(dir / "report.json", report.to_json().dump(2) + "\n");
}

void write_outputs(const AuditReport& report, const std::filesystem::path& dir) {
    ensure_dir(dir);
    write_file(dir / "audit.json", report.to_json().dump(2) + "\n");
}

std::filesystem::path write_synthetic_dataset(const AmbientSynthConfig& config, const std::filesystem::path& dir) {
    ensure_dir(dir);
    const auto data = generate_ambient_stream(config);
    json files = json::array();
    for (const auto& stream : data.streams) {
        const std::string name = "events_" + stream.source_id + ".txt";
        write_file(dir / name, serialize_event_log(stream.events));
        files.push_back({{"path", name}, {"subject", stream.subject_id}});
    }
    write_file(dir / "locations.json", json(data.locations).dump(2) + "\n");
    const json manifest{{"name", "synth-ambient"},
                        {"format", "event-log"},
                        {"schema", "casas"},
                        {"files", std::move(files)},
                        {"classes", data.classes.names()},
                        {"locations", "locations.json"},
                        {"generator", to_json(config)}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return dir / "manifest.json";
}

std::filesystem::path write_synthetic_dataset(const BodySynthConfig& config, const std::filesystem::path& dir) {
    ensure_dir(dir);
    const auto data = generate_body_stream(config);
    json files = json::array();
    for (const auto& s : data.streams) {
        const std::string name = s.source_id + ".txt";
        write_file(dir / name, serialize_sample_table(s.rows));
        files.push_back({{"path", name}, {"subject", s.subject_id}});
    }
    std::vector<std::size_t> channel_columns;
    for (std::size_t c = 0; c < data.channel_names.size(); ++c) channel_columns.push_back(c + 1);
    json activities = json::object();
    for (std::size_t c = 0; c < data.classes.size(); ++c) activities[std::to_string(c)] = data.classes.name(static_cast<ClassId>(c));
    const json manifest{{"name", "synth-body"},
                        {"format", "sample-table"},
                        {"schema",
                         {{"label_column", 0},
                          {"channel_columns", channel_columns},
                          {"channel_names", data.channel_names},
                          {"sample_rate_hz", config.sample_rate_hz}}},
                        {"files", std::move(files)},
                        {"activities", std::move(activities)},
                        {"generator", to_json(config)}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return dir / "manifest.json";
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

double num(const json& j, const char* key) { return j.contains(key) ? j[key].get<double>() : 0.0; }

void render_run(std::ostringstream& out, const json& r) {
    const auto& m = r.at("metrics");
    out << "split: " << r.at("label").get<std::string>() << "  (train " << r.at("train_instances") << ", test "
        << r.at("test_instances") << ")\n";
    out << "  balanced accuracy  " << fixed4(num(m, "balanced_accuracy")) << "\n";
    out << "  weighted f1        " << fixed4(num(m, "weighted_f1")) << "\n";
    out << "  accuracy           " << fixed4(num(m, "accuracy")) << "\n";
    const auto& l = r.at("leakage");
    out << "  leakage fraction   " << fixed4(num(l, "leakage_fraction")) << "\n";
    out << "  group violations   " << l.at("violation_count") << "\n";
    out << "  per-class f1:\n";
    for (const auto& [name, v] : m.at("per_class_f1").items()) out << "    " << name << "  " << fixed4(v.get<double>()) << "\n";
}

}  // namespace

std::string render_report(const json& doc) {
    std::ostringstream out;
    const std::string kind = doc.value("kind", "");
    if (kind == "run") {
        render_run(out, doc);
    } else if (kind == "compare") {
        const auto& b = doc.at("biased");
        const auto& u = doc.at("unbiased");
        out << "partitioning            b. acc    f1-score  leakage\n";
        for (const auto* r : {&b, &u}) {
            char line[160];
            std::snprintf(line, sizeof line, "%-22s  %s    %s    %s\n", (*r).at("label").get<std::string>().c_str(),
                          fixed4(num((*r).at("metrics"), "balanced_accuracy")).c_str(),
                          fixed4(num((*r).at("metrics"), "weighted_f1")).c_str(),
                          fixed4(num((*r).at("leakage"), "leakage_fraction")).c_str());
            out << line;
        }
        char line[160];
        std::snprintf(line, sizeof line, "%-22s  %s    %s\n", "gap (biased-unbiased)",
                      fixed4(num(doc.at("gap"), "balanced_accuracy")).c_str(),
                      fixed4(num(doc.at("gap"), "weighted_f1")).c_str());
        out << line;
    } else if (kind == "audit") {
        const auto& params = doc.at("parameters");
        out << "windows            " << params.at("windows") << "\n";
        out << "split              " << params.at("split").at("scheme").get<std::string>() << "\n";
        out << "leakage fraction   " << fixed4(num(doc, "leakage_fraction")) << "\n";
        out << "near duplicates    " << fixed4(num(doc, "near_duplicate_fraction")) << "\n";
        out << "adjacent           " << fixed4(num(doc, "adjacent_fraction")) << "\n";
        out << "group violations   " << doc.at("violation_count") << "\n";
        out << "overlap histogram:\n";
        for (const auto& [k, v] : doc.at("histogram").items()) out << "  " << k << ": " << v << "\n";
    } else {
        throw_format("not a harleak report (missing or unknown 'kind')");
    }
    return out.str();
}

}  // namespace harleak
