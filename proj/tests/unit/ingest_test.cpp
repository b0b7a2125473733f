#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "harleak/error.hpp"
#include "harleak/ingest.hpp"
#include "harleak/synth.hpp"

using namespace harleak;

TEST(EventLog, ParsesAnnotatedMotionLine) {
    const auto p = parse_event_log("2009-10-16 06:47:33 M012 ON Sleep begin\n");
    ASSERT_EQ(p.events.size(), 1u);
    const auto& e = p.events[0];
    EXPECT_EQ(e.sensor_id, "M012");
    EXPECT_EQ(e.kind, SensorKind::Motion);
    EXPECT_TRUE(e.is_on());
    ASSERT_TRUE(e.annotation.has_value());
    EXPECT_EQ(e.annotation->activity, "Sleep");
    EXPECT_EQ(e.annotation->marker, Marker::Begin);
    EXPECT_EQ(e.timestamp, fixtures::at(2009, 10, 16, 6, 47, 33));
}

TEST(EventLog, ParsesTemperatureLine) {
    const auto p = parse_event_log("2009-10-16 06:47:40 T001 21.5\n");
    ASSERT_EQ(p.events.size(), 1u);
    EXPECT_EQ(p.events[0].kind, SensorKind::Temperature);
    EXPECT_DOUBLE_EQ(p.events[0].value, 21.5);
    EXPECT_FALSE(p.events[0].annotation.has_value());
}

TEST(EventLog, EmptyInput) {
    const auto p = parse_event_log("");
    EXPECT_TRUE(p.events.empty());
    EXPECT_TRUE(p.issues.empty());
}

TEST(EventLog, DoorContactAndFractionalSeconds) {
    const auto p = parse_event_log("2009-10-16 00:01:02.500000 D003 OPEN\n2009-10-16 00:01:03 D003 CLOSE\n");
    ASSERT_EQ(p.events.size(), 2u);
    EXPECT_EQ(p.events[0].kind, SensorKind::DoorContact);
    EXPECT_TRUE(p.events[0].is_on());
    EXPECT_FALSE(p.events[1].is_on());
    EXPECT_EQ(p.events[1].timestamp - p.events[0].timestamp, std::chrono::microseconds(500000));
}

TEST(EventLog, MalformedLinesReportedWithLineNumbers) {
    std::string text;
    for (int i = 0; i < 20; ++i) text += "2009-10-16 06:47:" + std::to_string(10 + i) + " M001 ON\n";
    text += "garbage line\n";
    const auto p = parse_event_log(text);
    EXPECT_EQ(p.events.size(), 20u);
    ASSERT_EQ(p.issues.size(), 1u);
    EXPECT_EQ(p.issues[0].line, 21u);
}

TEST(EventLog, MostlyMalformedMeansWrongSchema) {
    try {
        parse_event_log("a b c\nd e f\n2009-10-16 06:47:33 M012 ON\n");
        FAIL() << "expected a format error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Format);
    }
}

TEST(EventLog, UnreadableFileIsIoError) {
    try {
        read_text_file("/nonexistent/dir/file.txt");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

TEST(EventLog, SerializeThenParseIsIdentity) {
    AmbientSynthConfig cfg;
    cfg.days = 2;
    cfg.events_per_day = 300;
    const auto data = generate_ambient_stream(cfg);
    for (const auto& stream : data.streams) {
        const auto text = serialize_event_log(stream.events);
        const auto p = parse_event_log(text);
        EXPECT_TRUE(p.issues.empty());
        EXPECT_EQ(p.events, stream.events);
        EXPECT_EQ(serialize_event_log(p.events), text);
    }
}

namespace {
SensorEvent ev(const char* id, std::optional<ActivityAnnotation> ann = std::nullopt) {
    auto e = fixtures::motion(id, true, fixtures::at(2009, 10, 16));
    e.annotation = std::move(ann);
    return e;
}
ActivityAnnotation begin(const char* a) { return {a, Marker::Begin}; }
ActivityAnnotation end(const char* a) { return {a, Marker::End}; }
std::vector<std::string> names(const LabelResolution& r, const ClassTable& t) {
    std::vector<std::string> out;
    for (auto id : r.labels) out.push_back(t.name(id));
    return out;
}
}  // namespace

TEST(ResolveLabels, SpanIsInclusive) {
    ClassTable t;
    const std::vector<SensorEvent> events{ev("a", begin("A")), ev("b"), ev("c"), ev("d", end("A"))};
    const auto r = resolve_labels(events, t);
    EXPECT_EQ(names(r, t), (std::vector<std::string>{"A", "A", "A", "A"}));
    EXPECT_TRUE(r.warnings.empty());
}

TEST(ResolveLabels, OutsideSpansIsOther) {
    ClassTable t;
    const std::vector<SensorEvent> events{ev("a"), ev("b", begin("A")), ev("c"), ev("d", end("A")), ev("e")};
    const auto r = resolve_labels(events, t);
    EXPECT_EQ(names(r, t), (std::vector<std::string>{"other", "A", "A", "A", "other"}));
}

TEST(ResolveLabels, InnermostWins) {
    ClassTable t;
    const std::vector<SensorEvent> events{ev("a", begin("A")), ev("b", begin("B")), ev("c"), ev("d", end("B")),
                                          ev("e", end("A"))};
    const auto r = resolve_labels(events, t);
    EXPECT_EQ(names(r, t), (std::vector<std::string>{"A", "B", "B", "B", "A"}));
}

TEST(ResolveLabels, UnmatchedMarkersWarn) {
    ClassTable t;
    const std::vector<SensorEvent> events{ev("a", end("X")), ev("b", begin("A")), ev("c")};
    const auto r = resolve_labels(events, t);
    EXPECT_EQ(names(r, t), (std::vector<std::string>{"other", "A", "A"}));
    EXPECT_EQ(r.warnings.size(), 2u);
}

TEST(ResolveLabels, LabelSetIsAnnotationsPlusOther) {
    AmbientSynthConfig cfg;
    cfg.days = 3;
    const auto data = generate_ambient_stream(cfg);
    for (const auto& stream : data.streams) {
        ClassTable t;
        const auto r = resolve_labels(stream.events, t);
        ASSERT_EQ(r.labels.size(), stream.events.size());
        for (std::size_t i = 0; i < r.labels.size(); ++i)
            EXPECT_EQ(t.name(r.labels[i]), data.classes.name(stream.labels[i])) << "event " << i;
    }
}

namespace {
SampleTableSchema one_channel() {
    SampleTableSchema s;
    s.label_column = 0;
    s.channel_columns = {1};
    s.subject_id = "s1";
    s.missing_value = -999.0;
    s.excluded_labels = {0};
    return s;
}
}  // namespace

TEST(SampleTable, RowsInOrder) {
    ClassTable t;
    const auto streams = parse_sample_table("1 0.5\n1 1.5\n2 2.5\n", one_channel(), t, "f");
    ASSERT_EQ(streams.size(), 1u);
    ASSERT_EQ(streams[0].rows.size(), 3u);
    EXPECT_DOUBLE_EQ(streams[0].rows[2].channels[0], 2.5);
    EXPECT_EQ(t.name(streams[0].rows[2].label), "2");
    EXPECT_EQ(streams[0].rows[1].index, 1u);
}

TEST(SampleTable, InteriorMissingIsInterpolated) {
    ClassTable t;
    const auto streams = parse_sample_table("1 1.0\n1 -999\n1 3.0\n", one_channel(), t, "f");
    ASSERT_EQ(streams.size(), 1u);
    ASSERT_EQ(streams[0].rows.size(), 3u);
    EXPECT_DOUBLE_EQ(streams[0].rows[1].channels[0], 2.0);
    const auto nan_streams = parse_sample_table("1 1.0\n1 NaN\n1 NaN\n1 4.0\n", one_channel(), t, "f");
    EXPECT_DOUBLE_EQ(nan_streams[0].rows[2].channels[0], 3.0);
}

TEST(SampleTable, MissingAtEdgesIsDropped) {
    ClassTable t;
    const auto streams = parse_sample_table("1 -999\n1 1.0\n1 2.0\n1 NaN\n", one_channel(), t, "f");
    ASSERT_EQ(streams.size(), 1u);
    EXPECT_EQ(streams[0].rows.size(), 2u);
}

TEST(SampleTable, LongGapSplitsStream) {
    ClassTable t;
    std::string text = "1 1.0\n1 2.0\n";
    for (int i = 0; i < 11; ++i) text += "1 NaN\n";
    text += "1 3.0\n1 4.0\n";
    const auto streams = parse_sample_table(text, one_channel(), t, "f");
    ASSERT_EQ(streams.size(), 2u);
    EXPECT_EQ(streams[0].rows.size(), 2u);
    EXPECT_EQ(streams[1].rows.size(), 2u);
    EXPECT_NE(streams[0].source_id, streams[1].source_id);
}

TEST(SampleTable, ExcludedLabelsDropped) {
    ClassTable t;
    EXPECT_TRUE(parse_sample_table("0 1.0\n0 2.0\n", one_channel(), t, "f").empty());
    const auto split = parse_sample_table("1 1.0\n0 2.0\n1 3.0\n", one_channel(), t, "f");
    EXPECT_EQ(split.size(), 2u);
}

TEST(SampleTable, NonNumericCellNamesRow) {
    ClassTable t;
    try {
        parse_sample_table("1 1.0\n1 abc\n", one_channel(), t, "f");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Format);
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    }
}

TEST(SampleTable, PresetSchemasSelectDocumentedChannels) {
    const auto p = pamap2_schema("101");
    EXPECT_EQ(p.channel_columns.size(), 27u);
    EXPECT_DOUBLE_EQ(p.sample_rate_hz, 100.0);
    EXPECT_EQ(p.label_column, 1u);
    const auto m = mhealth_schema("1");
    EXPECT_EQ(m.channel_columns.size(), 21u);
    EXPECT_DOUBLE_EQ(m.sample_rate_hz, 50.0);
    for (auto c : m.channel_columns) EXPECT_TRUE(c != 3 && c != 4);
}

namespace {
struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / ("harleak_ingest_" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};
void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }
}  // namespace

TEST(Manifest, LoadsEventLogWithLocations) {
    TempDir dir;
    write(dir.path / "a.txt", "2009-10-16 06:47:33 M001 ON Sleep begin\n2009-10-16 06:47:40 M002 OFF Sleep end\n");
    write(dir.path / "manifest.json",
          R"({"name":"tiny","format":"event-log","schema":"casas","files":[{"path":"a.txt","subject":"r1"}],
              "locations":{"M001":"bedroom","M002":"kitchen"}})");
    const auto ds = load_manifest(dir.path / "manifest.json");
    ASSERT_EQ(ds.event_streams.size(), 1u);
    EXPECT_EQ(ds.event_streams[0].subject_id, "r1");
    EXPECT_EQ(ds.classes.name(ds.event_streams[0].labels[1]), "Sleep");
    EXPECT_EQ(ds.locations.at("M002"), "kitchen");
}

TEST(Manifest, MissingManifestIsConfigErrorNamingPath) {
    try {
        load_manifest("/no/such/manifest.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config);
        EXPECT_NE(std::string(e.what()).find("/no/such/manifest.json"), std::string::npos);
    }
}
