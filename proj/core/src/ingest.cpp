#include "harleak/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "harleak/error.hpp"

namespace harleak {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

// Calls fn(line_number, line) for every line, 1-based.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        fn(line_no, text.substr(pos, nl - pos));
        pos = nl + 1;
    }
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool is_nan_token(std::string_view s) {
    const auto u = upper(s);
    return u == "NAN" || u == "-NAN";
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw_invariant("failed to format number");
    return std::string(buf, ptr);
}

// Reads up to max_digits decimal digits.
bool read_int(std::string_view text, std::size_t& pos, int max_digits, int& out) {
    int digits = 0;
    int value = 0;
    while (pos < text.size() && digits < max_digits && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
    }
    out = value;
    return digits > 0;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw_io("error while reading '" + path.string() + "'");
    return ss.str();
}

// ---------------------------------------------------------------------------
// Timestamps

TimePoint parse_timestamp(std::string_view text, std::string_view format) {
    int year = 1970, month = 1, day = 1, hour = 0, minute = 0, second = 0;
    long micros = 0;
    std::size_t pos = 0;
    auto fail = [&]() -> TimePoint {
        throw_format("timestamp '" + std::string(text) + "' does not match format '" + std::string(format) + "'");
    };
    for (std::size_t f = 0; f < format.size(); ++f) {
        const char fc = format[f];
        if (fc == '%' && f + 1 < format.size()) {
            const char spec = format[++f];
            bool ok = false;
            switch (spec) {
                case 'Y':
                    ok = read_int(text, pos, 4, year);
                    break;
                case 'm':
                    ok = read_int(text, pos, 2, month);
                    break;
                case 'd':
                    ok = read_int(text, pos, 2, day);
                    break;
                case 'H':
                    ok = read_int(text, pos, 2, hour);
                    break;
                case 'M':
                    ok = read_int(text, pos, 2, minute);
                    break;
                case 'S':
                    ok = read_int(text, pos, 2, second);
                    if (ok && pos < text.size() && text[pos] == '.') {
                        ++pos;
                        long scale = 100000;
                        std::size_t digits = 0;
                        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                            if (scale > 0) {
                                micros += (text[pos] - '0') * scale;
                                scale /= 10;
                            }
                            ++pos;
                            ++digits;
                        }
                        ok = digits > 0;
                    }
                    break;
                default:
                    throw_config("unsupported timestamp directive %" + std::string(1, spec));
            }
            if (!ok) return fail();
        } else if (is_space(fc)) {
            if (pos >= text.size() || !is_space(text[pos])) return fail();
            while (pos < text.size() && is_space(text[pos])) ++pos;
        } else {
            if (pos >= text.size() || text[pos] != fc) return fail();
            ++pos;
        }
    }
    if (pos != text.size()) return fail();
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) return fail();
    using namespace std::chrono;
    return TimePoint{sys_days{ymd}} + hours{hour} + minutes{minute} + seconds{second} + microseconds{micros};
}

std::string format_date(TimePoint tp) {
    using namespace std::chrono;
    const auto days = floor<std::chrono::days>(tp);
    const year_month_day ymd{days};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(TimePoint tp) {
    using namespace std::chrono;
    const auto days = floor<std::chrono::days>(tp);
    const hh_mm_ss tod{tp - days};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s %02ld:%02ld:%02ld", format_date(tp).c_str(),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    std::string out = buf;
    const auto us = tod.subseconds().count();
    if (us != 0) {
        std::snprintf(buf, sizeof buf, ".%06ld", static_cast<long>(us));
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Event logs

void EventLogSchema::validate() const {
    if (columns.size() < 4) throw_config("event log schema declares fewer than 4 columns");
    auto count = [&](EventColumn c) { return std::count(columns.begin(), columns.end(), c); };
    for (auto c : {EventColumn::Date, EventColumn::Time, EventColumn::SensorId, EventColumn::Value})
        if (count(c) != 1) throw_config("event log schema needs exactly one date, time, sensor and value column");
    if (count(EventColumn::Activity) > 1 || count(EventColumn::Marker) > 1)
        throw_config("event log schema repeats the activity or marker column");
}

EventLogSchema casas_event_schema() { return EventLogSchema{}; }

namespace {

struct LineResult {
    std::optional<SensorEvent> event;
    std::string error;
};

std::optional<Marker> parse_marker(std::string_view token) {
    std::string u = upper(token);
    if (u.size() >= 2 && u.front() == '"' && u.back() == '"') u = u.substr(1, u.size() - 2);
    if (u == "BEGIN") return Marker::Begin;
    if (u == "END") return Marker::End;
    return std::nullopt;
}

LineResult parse_event_line(std::string_view line, const EventLogSchema& schema) {
    const auto tokens = split_ws(line);
    std::size_t required = 0;
    for (auto c : schema.columns)
        if (c != EventColumn::Activity && c != EventColumn::Marker) ++required;
    if (tokens.size() < required) return {std::nullopt, "expected at least " + std::to_string(required) + " fields"};

    std::string_view date, time, sensor, value, activity, marker;
    std::size_t t = 0;
    for (auto col : schema.columns) {
        if (t >= tokens.size()) break;
        switch (col) {
            case EventColumn::Date:
                date = tokens[t++];
                break;
            case EventColumn::Time:
                time = tokens[t++];
                break;
            case EventColumn::SensorId:
                sensor = tokens[t++];
                break;
            case EventColumn::Value:
                value = tokens[t++];
                break;
            case EventColumn::Activity:
                activity = tokens[t++];
                break;
            case EventColumn::Marker:
                marker = tokens[t++];
                break;
        }
    }
    if (t != tokens.size()) return {std::nullopt, "unexpected trailing fields"};

    SensorEvent ev;
    try {
        ev.timestamp = parse_timestamp(std::string(date) + " " + std::string(time), schema.timestamp_format);
    } catch (const Error& e) {
        return {std::nullopt, e.what()};
    }
    ev.sensor_id = std::string(sensor);

    const std::string v = upper(value);
    if (v == "ON" || v == "OFF") {
        ev.kind = SensorKind::Motion;
        ev.value = v == "ON" ? 1.0 : 0.0;
    } else if (v == "OPEN" || v == "CLOSE" || v == "CLOSED") {
        ev.kind = SensorKind::DoorContact;
        ev.value = v == "OPEN" ? 1.0 : 0.0;
    } else if (auto num = parse_double(value); num && std::isfinite(*num)) {
        ev.kind = SensorKind::Temperature;
        ev.value = *num;
    } else {
        return {std::nullopt, "unrecognised sensor value '" + std::string(value) + "'"};
    }

    if (!activity.empty()) {
        if (marker.empty()) {
            // Single-token form: Activity="begin"
            const auto eq = activity.find('=');
            if (eq == std::string_view::npos) return {std::nullopt, "activity without begin/end marker"};
            marker = activity.substr(eq + 1);
            activity = activity.substr(0, eq);
        }
        const auto m = parse_marker(marker);
        if (!m || activity.empty()) return {std::nullopt, "bad activity marker '" + std::string(marker) + "'"};
        ev.annotation = ActivityAnnotation{std::string(activity), *m};
    }
    return {std::move(ev), {}};
}

}  // namespace

EventLogParse parse_event_log(std::string_view text, const EventLogSchema& schema) {
    schema.validate();
    EventLogParse out;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (split_ws(line).empty()) return;
        ++out.lines_read;
        auto res = parse_event_line(line, schema);
        if (!res.event) {
            out.issues.push_back({line_no, std::move(res.error)});
            return;
        }
        if (!out.events.empty() && res.event->timestamp < out.events.back().timestamp) {
            out.issues.push_back({line_no, "timestamp earlier than the previous event"});
            return;
        }
        out.events.push_back(std::move(*res.event));
    });
    if (out.issues.size() * 10 > out.lines_read) {
        throw_format(std::to_string(out.issues.size()) + " of " + std::to_string(out.lines_read) +
                     " lines are malformed (first at line " + std::to_string(out.issues.front().line) + ": " +
                     out.issues.front().reason + "); wrong schema?");
    }
    return out;
}

std::string serialize_event_log(std::span<const SensorEvent> events) {
    std::string out;
    for (const auto& ev : events) {
        out += format_timestamp(ev.timestamp);
        out += ' ';
        out += ev.sensor_id;
        out += ' ';
        switch (ev.kind) {
            case SensorKind::Motion:
                out += ev.value != 0.0 ? "ON" : "OFF";
                break;
            case SensorKind::DoorContact:
                out += ev.value != 0.0 ? "OPEN" : "CLOSE";
                break;
            case SensorKind::Temperature:
                out += format_double(ev.value);
                break;
        }
        if (ev.annotation) {
            out += ' ';
            out += ev.annotation->activity;
            out += ev.annotation->marker == Marker::Begin ? " begin" : " end";
        }
        out += '\n';
    }
    return out;
}

LabelResolution resolve_labels(std::span<const SensorEvent> events, ClassTable& classes) {
    LabelResolution out;
    const ClassId other = classes.intern(kOtherClass);
    out.labels.reserve(events.size());

    // Open spans, innermost last.
    std::vector<std::pair<std::string, ClassId>> open;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ann = events[i].annotation;
        if (ann && ann->marker == Marker::Begin) open.emplace_back(ann->activity, classes.intern(ann->activity));
        out.labels.push_back(open.empty() ? other : open.back().second);
        if (ann && ann->marker == Marker::End) {
            auto it = std::find_if(open.rbegin(), open.rend(), [&](const auto& o) { return o.first == ann->activity; });
            if (it == open.rend()) {
                out.warnings.push_back("event " + std::to_string(i) + ": end of '" + ann->activity +
                                       "' without a matching begin; ignored");
            } else {
                open.erase(std::next(it).base());
            }
        }
    }
    for (const auto& o : open)
        out.warnings.push_back("'" + o.first + "' has no end marker; closed at end of stream");
    return out;
}

// ---------------------------------------------------------------------------
// Sample tables

void SampleTableSchema::validate() const {
    if (!(sample_rate_hz > 0.0)) throw_config("sample rate must be positive");
    if (channel_columns.empty()) throw_config("sample table schema selects no channels");
    if (!channel_names.empty() && channel_names.size() != channel_columns.size())
        throw_config("channel_names and channel_columns differ in length");
    for (auto c : channel_columns)
        if (c == label_column) throw_config("label column is also selected as a channel");
}

std::string SampleTableSchema::channel_name(std::size_t i) const {
    if (i < channel_names.size()) return channel_names[i];
    return "ch" + std::to_string(channel_columns.at(i));
}

SampleTableSchema pamap2_schema(std::string subject_id) {
    SampleTableSchema s;
    s.label_column = 1;
    s.subject_id = std::move(subject_id);
    s.sample_rate_hz = 100.0;
    const std::pair<const char*, std::size_t> imus[] = {{"hand", 3}, {"chest", 20}, {"ankle", 37}};
    const char* axes[] = {"x", "y", "z"};
    for (const auto& [imu, base] : imus) {
        const std::pair<const char*, std::size_t> sensors[] = {{"acc", 1}, {"gyro", 7}, {"mag", 10}};
        for (const auto& [sensor, offset] : sensors) {
            for (std::size_t a = 0; a < 3; ++a) {
                s.channel_columns.push_back(base + offset + a);
                s.channel_names.push_back(std::string(imu) + "_" + sensor + "_" + axes[a]);
            }
        }
    }
    // Transient periods and the optional activities.
    s.excluded_labels = {0, 9, 10, 11, 18, 19, 20};
    s.activity_names = {{1, "lying"},           {2, "sitting"},           {3, "standing"},
                        {4, "walking"},         {5, "running"},           {6, "cycling"},
                        {7, "nordic_walking"},  {12, "ascending_stairs"}, {13, "descending_stairs"},
                        {16, "vacuum_cleaning"}, {17, "ironing"},          {24, "rope_jumping"}};
    return s;
}

SampleTableSchema mhealth_schema(std::string subject_id) {
    SampleTableSchema s;
    s.label_column = 23;
    s.subject_id = std::move(subject_id);
    s.sample_rate_hz = 50.0;
    const char* names[] = {"chest_acc_x", "chest_acc_y", "chest_acc_z", nullptr,        nullptr,
                           "ankle_acc_x", "ankle_acc_y", "ankle_acc_z", "ankle_gyro_x", "ankle_gyro_y",
                           "ankle_gyro_z", "ankle_mag_x", "ankle_mag_y", "ankle_mag_z", "arm_acc_x",
                           "arm_acc_y",   "arm_acc_z",   "arm_gyro_x",  "arm_gyro_y",   "arm_gyro_z",
                           "arm_mag_x",   "arm_mag_y",   "arm_mag_z"};
    for (std::size_t c = 0; c < 23; ++c) {
        if (!names[c]) continue;  // ECG leads
        s.channel_columns.push_back(c);
        s.channel_names.emplace_back(names[c]);
    }
    s.excluded_labels = {0};
    s.activity_names = {{1, "standing"},  {2, "sitting"},         {3, "lying"},        {4, "walking"},
                        {5, "climbing_stairs"}, {6, "waist_bends"}, {7, "arms_elevation"}, {8, "knees_bending"},
                        {9, "cycling"},   {10, "jogging"},        {11, "running"},     {12, "jumping"}};
    return s;
}

namespace {

struct RawRow {
    std::vector<double> channels;
    std::int64_t label = 0;
    std::string subject;
};

std::string cell_as_key(double v, std::string_view token) {
    if (std::nearbyint(v) == v && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    return std::string(token);
}

}  // namespace

std::vector<SampleStream> parse_sample_table(std::string_view text, const SampleTableSchema& schema,
                                             ClassTable& classes, const std::string& source_id) {
    schema.validate();
    const std::size_t n_ch = schema.channel_columns.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // Blocks of consecutive kept rows; excluded labels and subject changes
    // end a block.
    std::vector<std::vector<RawRow>> blocks(1);
    std::size_t row_no = 0;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        const auto tokens = split_ws(line);
        if (tokens.empty()) return;
        const std::size_t row_index = row_no++;
        auto where = [&](std::size_t col) {
            return "row " + std::to_string(row_index) + " (line " + std::to_string(line_no) + "), column " +
                   std::to_string(col);
        };
        auto cell = [&](std::size_t col) -> std::string_view {
            if (col >= tokens.size()) throw_format(where(col) + ": missing cell");
            return tokens[col];
        };

        RawRow row;
        const auto label_token = cell(schema.label_column);
        const auto label = parse_double(label_token);
        if (!label || !std::isfinite(*label) || std::nearbyint(*label) != *label)
            throw_format(where(schema.label_column) + ": label '" + std::string(label_token) + "' is not an integer");
        row.label = static_cast<std::int64_t>(*label);
        if (schema.subject_column) {
            const auto tok = cell(*schema.subject_column);
            const auto num = parse_double(tok);
            row.subject = num ? cell_as_key(*num, tok) : std::string(tok);
        } else {
            row.subject = schema.subject_id;
        }

        if (std::find(schema.excluded_labels.begin(), schema.excluded_labels.end(), row.label) !=
            schema.excluded_labels.end()) {
            if (!blocks.back().empty()) blocks.emplace_back();
            return;
        }

        row.channels.resize(n_ch);
        for (std::size_t c = 0; c < n_ch; ++c) {
            const auto tok = cell(schema.channel_columns[c]);
            if (is_nan_token(tok)) {
                row.channels[c] = nan;
                continue;
            }
            const auto v = parse_double(tok);
            if (!v) throw_format(where(schema.channel_columns[c]) + ": non-numeric value '" + std::string(tok) + "'");
            if (schema.missing_value && *v == *schema.missing_value)
                row.channels[c] = nan;
            else if (!std::isfinite(*v))
                throw_format(where(schema.channel_columns[c]) + ": non-finite value");
            else
                row.channels[c] = *v;
        }
        if (!blocks.back().empty() && blocks.back().back().subject != row.subject) blocks.emplace_back();
        blocks.back().push_back(std::move(row));
    });

    std::vector<SampleStream> streams;
    auto start_stream = [&](const std::string& subject) {
        SampleStream s;
        s.source_id = streams.empty() ? source_id : source_id + "#" + std::to_string(streams.size());
        s.subject_id = subject;
        streams.push_back(std::move(s));
    };

    for (auto& block : blocks) {
        const std::size_t n = block.size();
        if (n == 0) continue;
        std::vector<char> drop(n, 0);
        for (std::size_t c = 0; c < n_ch; ++c) {
            std::size_t i = 0;
            while (i < n) {
                if (!std::isnan(block[i].channels[c])) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < n && std::isnan(block[j].channels[c])) ++j;
                const bool edge = i == 0 || j == n;
                if (edge || j - i > schema.max_interpolated_gap) {
                    for (std::size_t r = i; r < j; ++r) drop[r] = 1;
                } else {
                    const double lo = block[i - 1].channels[c];
                    const double hi = block[j].channels[c];
                    const double span = static_cast<double>(j - i + 1);
                    for (std::size_t r = i; r < j; ++r)
                        block[r].channels[c] = lo + (hi - lo) * static_cast<double>(r - i + 1) / span;
                }
                i = j;
            }
        }
        // A dropped row is a hole in time: the stream restarts after it.
        bool open = false;
        for (std::size_t r = 0; r < n; ++r) {
            if (drop[r]) {
                open = false;
                continue;
            }
            if (!open) {
                start_stream(block[r].subject);
                open = true;
            }
            auto& rows = streams.back().rows;
            SampleRow out;
            out.index = rows.size();
            out.channels = std::move(block[r].channels);
            auto name_it = schema.activity_names.find(block[r].label);
            out.label = classes.intern(name_it != schema.activity_names.end() ? name_it->second
                                                                              : std::to_string(block[r].label));
            out.subject_id = block[r].subject;
            rows.push_back(std::move(out));
        }
    }
    return streams;
}

std::string serialize_sample_table(std::span<const SampleRow> rows) {
    std::string out;
    for (const auto& row : rows) {
        out += std::to_string(row.label);
        for (double v : row.channels) {
            out += '\t';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace harleak
