#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harleak/model.hpp"

namespace harleak {

/// A time-ordered ambient event stream and its per-event labels
/// (filled by resolve_labels; empty until then).
struct EventStream {
    std::string source_id;
    std::string subject_id;
    std::vector<SensorEvent> events;
    std::vector<ClassId> labels;
};

/// A contiguous run of fixed-rate samples from one subject. Row indices
/// are positions within this stream.
struct SampleStream {
    std::string source_id;
    std::string subject_id;
    std::vector<SampleRow> rows;
};

std::string read_text_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Event logs

enum class EventColumn { Date, Time, SensorId, Value, Activity, Marker };

struct EventLogSchema {
    std::vector<EventColumn> columns{EventColumn::Date,     EventColumn::Time,
                                     EventColumn::SensorId, EventColumn::Value,
                                     EventColumn::Activity, EventColumn::Marker};
    // Supports %Y %m %d %H %M %S and literal characters. %S accepts an
    // optional fractional part.
    std::string timestamp_format = "%Y-%m-%d %H:%M:%S";

    void validate() const;
};

/// Layout of the CASAS smart-home distributions (MILAN and siblings).
EventLogSchema casas_event_schema();

struct ParseIssue {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct EventLogParse {
    std::vector<SensorEvent> events;
    std::vector<ParseIssue> issues;
    std::size_t lines_read = 0;  // non-blank lines
};

/// Parses one event per line. Malformed or time-reversed lines are skipped
/// and reported; more than 10% of them is treated as a schema mismatch.
EventLogParse parse_event_log(std::string_view text, const EventLogSchema& schema = {});

/// Inverse of parse_event_log for the default schema.
std::string serialize_event_log(std::span<const SensorEvent> events);

TimePoint parse_timestamp(std::string_view text, std::string_view format);
std::string format_timestamp(TimePoint tp);
/// Calendar date of a time point, as YYYY-MM-DD.
std::string format_date(TimePoint tp);

struct LabelResolution {
    std::vector<ClassId> labels;
    std::vector<std::string> warnings;
};

/// Assigns every event the innermost enclosing annotated activity, or
/// "other" when no span is open. Begin and end events belong to their span.
LabelResolution resolve_labels(std::span<const SensorEvent> events, ClassTable& classes);

// ---------------------------------------------------------------------------
// Sample tables

struct SampleTableSchema {
    std::vector<std::size_t> channel_columns;
    std::vector<std::string> channel_names;  // optional; defaults to ch<column>
    std::size_t label_column = 0;
    std::optional<std::size_t> subject_column;
    std::string subject_id;  // used when subject_column is empty
    double sample_rate_hz = 50.0;
    std::optional<double> missing_value;  // NaN cells always count as missing
    std::vector<std::int64_t> excluded_labels;
    std::size_t max_interpolated_gap = 10;
    std::map<std::int64_t, std::string> activity_names;

    void validate() const;
    std::string channel_name(std::size_t i) const;
};

/// PAMAP2 protocol files: 3 IMUs x (16g accelerometer, gyroscope,
/// magnetometer), label 0 (transient) excluded, 100 Hz.
SampleTableSchema pamap2_schema(std::string subject_id);

/// MHEALTH logs: every IMU channel except the two ECG leads, null class 0
/// excluded, 50 Hz.
SampleTableSchema mhealth_schema(std::string subject_id);

/// Parses a whitespace separated numeric table into contiguous streams.
/// Interior missing runs up to max_interpolated_gap rows are linearly
/// interpolated; longer runs, excluded labels and subject changes split the
/// stream; missing values at a stream edge drop the row.
std::vector<SampleStream> parse_sample_table(std::string_view text, const SampleTableSchema& schema,
                                             ClassTable& classes, const std::string& source_id);

/// One line per row: numeric label (the class id) followed by the channels.
std::string serialize_sample_table(std::span<const SampleRow> rows);

// ---------------------------------------------------------------------------
// Dataset manifests

using LocationMap = std::map<std::string, std::string>;

enum class DatasetKind { EventLog, SampleTable };

struct Dataset {
    std::string name;
    DatasetKind kind = DatasetKind::EventLog;
    ClassTable classes;
    std::vector<EventStream> event_streams;
    std::vector<SampleStream> sample_streams;
    LocationMap locations;
    double sample_rate_hz = 0.0;
    std::vector<std::string> channel_names;
    std::vector<std::string> warnings;
};

/// Loads a JSON manifest and every file it lists, resolving event labels.
Dataset load_manifest(const std::filesystem::path& manifest_path);

LocationMap load_location_map(const std::filesystem::path& path);

}  // namespace harleak
