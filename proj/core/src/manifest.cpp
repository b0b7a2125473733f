#include <nlohmann/json.hpp>

#include "harleak/error.hpp"
#include "harleak/ingest.hpp"

namespace harleak {

namespace {

using nlohmann::json;

json parse_json_file(const std::filesystem::path& path, ErrorKind missing_kind) {
    if (!std::filesystem::exists(path)) throw Error(missing_kind, "file not found: '" + path.string() + "'");
    const auto text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw_format("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

EventColumn parse_event_column(const std::string& name) {
    if (name == "date") return EventColumn::Date;
    if (name == "time") return EventColumn::Time;
    if (name == "sensor" || name == "sensor_id") return EventColumn::SensorId;
    if (name == "value") return EventColumn::Value;
    if (name == "activity") return EventColumn::Activity;
    if (name == "marker") return EventColumn::Marker;
    throw_config("unknown event log column '" + name + "'");
}

EventLogSchema event_schema_from(const json& doc) {
    EventLogSchema schema = casas_event_schema();
    if (doc.contains("schema") && doc["schema"].is_object()) {
        const auto& s = doc["schema"];
        if (s.contains("columns")) {
            schema.columns.clear();
            for (const auto& c : s["columns"]) schema.columns.push_back(parse_event_column(c.get<std::string>()));
        }
        if (s.contains("timestamp_format")) schema.timestamp_format = s["timestamp_format"].get<std::string>();
    } else if (doc.contains("schema") && doc["schema"].get<std::string>() != "casas") {
        throw_config("unknown event log schema '" + doc["schema"].get<std::string>() + "'");
    }
    if (doc.contains("timestamp_format")) schema.timestamp_format = doc["timestamp_format"].get<std::string>();
    return schema;
}

SampleTableSchema sample_schema_from(const json& doc, const std::string& subject) {
    SampleTableSchema schema;
    const auto& s = doc.at("schema");
    if (s.is_string()) {
        const auto name = s.get<std::string>();
        if (name == "pamap2")
            schema = pamap2_schema(subject);
        else if (name == "mhealth")
            schema = mhealth_schema(subject);
        else
            throw_config("unknown sample table schema '" + name + "'");
    } else {
        schema.channel_columns = s.at("channel_columns").get<std::vector<std::size_t>>();
        schema.channel_names = s.value("channel_names", std::vector<std::string>{});
        schema.label_column = s.at("label_column").get<std::size_t>();
        if (s.contains("subject_column") && !s["subject_column"].is_null())
            schema.subject_column = s["subject_column"].get<std::size_t>();
        schema.sample_rate_hz = s.value("sample_rate_hz", 50.0);
        if (s.contains("missing_value") && !s["missing_value"].is_null())
            schema.missing_value = s["missing_value"].get<double>();
        schema.excluded_labels = s.value("excluded_labels", std::vector<std::int64_t>{});
        schema.max_interpolated_gap = s.value("max_interpolated_gap", std::size_t{10});
        schema.subject_id = subject;
    }
    if (doc.contains("activities")) {
        for (const auto& [key, value] : doc["activities"].items())
            schema.activity_names[std::stoll(key)] = value.get<std::string>();
    }
    return schema;
}

}  // namespace

LocationMap load_location_map(const std::filesystem::path& path) {
    const auto doc = parse_json_file(path, ErrorKind::Config);
    if (!doc.is_object()) throw_format("location map '" + path.string() + "' must be a JSON object");
    LocationMap map;
    for (const auto& [sensor, room] : doc.items()) map[sensor] = room.get<std::string>();
    return map;
}

Dataset load_manifest(const std::filesystem::path& manifest_path) {
    const auto doc = parse_json_file(manifest_path, ErrorKind::Config);
    const auto base = manifest_path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base / path;
    };

    Dataset ds;
    try {
        ds.name = doc.value("name", manifest_path.stem().string());
        const auto format = doc.at("format").get<std::string>();
        if (format == "event-log")
            ds.kind = DatasetKind::EventLog;
        else if (format == "sample-table")
            ds.kind = DatasetKind::SampleTable;
        else
            throw_config("manifest format must be 'event-log' or 'sample-table', got '" + format + "'");

        if (doc.contains("locations")) {
            const auto& loc = doc["locations"];
            if (loc.is_string()) {
                ds.locations = load_location_map(resolve(loc.get<std::string>()));
            } else {
                for (const auto& [sensor, room] : loc.items()) ds.locations[sensor] = room.get<std::string>();
            }
        }

        const auto& files = doc.at("files");
        if (!files.is_array() || files.empty()) throw_config("manifest lists no files");

        if (ds.kind == DatasetKind::EventLog) {
            const auto schema = event_schema_from(doc);
            ds.classes.intern(kOtherClass);
            if (doc.contains("classes"))  // fixes class ids up front; others are added as seen
                for (const auto& c : doc["classes"]) ds.classes.intern(c.get<std::string>());
            for (std::size_t i = 0; i < files.size(); ++i) {
                const auto path = resolve(files[i].at("path").get<std::string>());
                auto parsed = parse_event_log(read_text_file(path), schema);
                for (const auto& issue : parsed.issues)
                    ds.warnings.push_back(path.filename().string() + ":" + std::to_string(issue.line) + ": " +
                                          issue.reason);
                EventStream stream;
                stream.source_id = path.stem().string();
                if (files.size() > 1) stream.source_id += "#" + std::to_string(i);
                stream.subject_id = files[i].value("subject", stream.source_id);
                stream.events = std::move(parsed.events);
                auto resolved = resolve_labels(stream.events, ds.classes);
                stream.labels = std::move(resolved.labels);
                for (auto& w : resolved.warnings) ds.warnings.push_back(stream.source_id + ": " + std::move(w));
                ds.event_streams.push_back(std::move(stream));
            }
        } else {
            for (std::size_t i = 0; i < files.size(); ++i) {
                const auto path = resolve(files[i].at("path").get<std::string>());
                const auto subject = files[i].value("subject", path.stem().string());
                const auto schema = sample_schema_from(doc, subject);
                if (i == 0) {
                    for (const auto& [code, name] : schema.activity_names) ds.classes.intern(name);
                    ds.sample_rate_hz = schema.sample_rate_hz;
                    for (std::size_t c = 0; c < schema.channel_columns.size(); ++c)
                        ds.channel_names.push_back(schema.channel_name(c));
                }
                auto streams = parse_sample_table(read_text_file(path), schema, ds.classes, path.stem().string());
                for (auto& s : streams) ds.sample_streams.push_back(std::move(s));
            }
        }
    } catch (const json::exception& e) {
        throw_config("manifest '" + manifest_path.string() + "': " + e.what());
    }
    return ds;
}

}  // namespace harleak
