#include "harleak/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harleak/error.hpp"
#include "harleak/rng.hpp"

namespace harleak {

namespace {

// Visit length with the requested mean; at least 2 whenever mean >= 2.
std::size_t draw_duration(Rng& rng, double mean) {
    if (mean >= 2.0) return mean == 2.0 ? 2 : 1 + rng.geometric(1.0 / (mean - 1.0));
    return rng.geometric(1.0 / mean);
}

std::string padded(char prefix, std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%03zu", prefix, n);
    return buf;
}

}  // namespace

void AmbientSynthConfig::validate() const {
    if (activities < 1 || sensors < 1 || days < 1 || events_per_day < 1)
        throw_config("synthetic ambient counts must all be at least 1");
    if (!(mean_duration >= 1.0)) throw_config("mean activity duration must be at least 1 event");
    if (!(noise >= 0.0) || noise > 1.0) throw_config("ambient noise is a mixture weight in [0, 1]");
    if (!(concentration >= 0.0)) throw_config("concentration must be non-negative");
    if (!(temperature_rate >= 0.0 && temperature_rate < 1.0)) throw_config("temperature_rate must lie in [0, 1)");
}

AmbientSynthData generate_ambient_stream(const AmbientSynthConfig& config) {
    config.validate();
    Rng rng(config.seed);
    AmbientSynthData out;
    out.classes.intern(kOtherClass);
    std::vector<ClassId> activity_ids;
    for (std::size_t a = 0; a < config.activities; ++a)
        activity_ids.push_back(out.classes.intern("act" + std::to_string(a)));

    // Binary sensors sit on a ring; every tenth one is a door contact.
    const std::size_t S = config.sensors;
    std::vector<std::string> ids(S);
    std::vector<SensorKind> kinds(S);
    std::size_t motion_n = 0, door_n = 0;
    for (std::size_t p = 0; p < S; ++p) {
        const bool door = S >= 10 && p % 10 == 9;
        kinds[p] = door ? SensorKind::DoorContact : SensorKind::Motion;
        ids[p] = door ? padded('D', ++door_n) : padded('M', ++motion_n);
        out.locations[ids[p]] = "room" + std::to_string(p * config.activities / S);
    }
    std::vector<std::string> temp_ids;
    for (std::size_t t = 0; t < config.temperature_sensors; ++t) {
        temp_ids.push_back(padded('T', t + 1));
        out.locations[temp_ids.back()] = "room" + std::to_string(t % config.activities);
    }

    std::vector<std::vector<double>> weights(config.activities, std::vector<double>(S));
    for (std::size_t a = 0; a < config.activities; ++a) {
        const std::size_t mode = a * S / config.activities;
        double total = 0.0;
        for (std::size_t p = 0; p < S; ++p) {
            const std::size_t d = std::min((p + S - mode) % S, (mode + S - p) % S);
            double w;
            if (std::isinf(config.concentration))
                w = d == 0 ? 1.0 : 0.0;
            else
                w = std::exp(-config.concentration * static_cast<double>(d));
            weights[a][p] = w;
            total += w;
        }
        for (auto& w : weights[a]) w = (1.0 - config.noise) * w / total + config.noise / static_cast<double>(S);
    }

    // Visit schedule, day by day. The process carries across midnight but a
    // visit is cut there; a one-event stub is folded into the visit before it.
    struct Visit {
        std::size_t activity;
        std::size_t length;
    };
    std::vector<std::vector<Visit>> schedule(config.days);
    std::size_t activity = rng.uniform_index(config.activities);
    auto advance = [&] {
        if (config.activities < 2) return;
        const std::size_t next = rng.uniform_index(config.activities - 1);
        activity = next >= activity ? next + 1 : next;
    };
    for (auto& day : schedule) {
        for (std::size_t covered = 0; covered < config.events_per_day;) {
            const std::size_t drawn = draw_duration(rng, config.mean_duration);
            const std::size_t len = std::min(drawn, config.events_per_day - covered);
            if (len == 1 && drawn > 1 && !day.empty())
                ++day.back().length;
            else
                day.push_back({activity, len});
            covered += len;
            advance();
        }
    }

    using namespace std::chrono;
    const sys_days first_day{year{2009} / October / 16};
    const std::int64_t spacing_us = 86'400'000'000LL / static_cast<std::int64_t>(config.events_per_day + 1);
    std::vector<char> state(S, 0);

    for (std::size_t d = 0; d < config.days; ++d) {
        EventStream stream;
        const TimePoint midnight{first_day + days{d}};
        stream.source_id = format_date(midnight);
        stream.subject_id = "resident";
        stream.events.reserve(config.events_per_day);
        stream.labels.reserve(config.events_per_day);
        std::size_t slot = 0;
        for (const auto& visit : schedule[d]) {
            const std::string name = "act" + std::to_string(visit.activity);
            for (std::size_t k = 0; k < visit.length; ++k, ++slot) {
                SensorEvent ev;
                ev.timestamp = midnight + microseconds{static_cast<std::int64_t>(slot + 1) * spacing_us};
                if (!temp_ids.empty() && rng.uniform01() < config.temperature_rate) {
                    ev.sensor_id = temp_ids[rng.uniform_index(temp_ids.size())];
                    ev.kind = SensorKind::Temperature;
                    ev.value = std::round((21.0 + 0.5 * rng.normal()) * 10.0) / 10.0;
                } else {
                    const std::size_t p = rng.categorical(weights[visit.activity]);
                    state[p] = !state[p];
                    ev.sensor_id = ids[p];
                    ev.kind = kinds[p];
                    ev.value = state[p] ? 1.0 : 0.0;
                }
                // A one-event visit gets a begin marker only.
                if (k == 0)
                    ev.annotation = ActivityAnnotation{name, Marker::Begin};
                else if (k + 1 == visit.length)
                    ev.annotation = ActivityAnnotation{name, Marker::End};
                stream.events.push_back(std::move(ev));
                stream.labels.push_back(activity_ids[visit.activity]);
            }
        }
        out.streams.push_back(std::move(stream));
    }
    return out;
}

void BodySynthConfig::validate() const {
    if (activities < 1 || channels < 1 || subjects < 1 || visits_per_activity < 1)
        throw_config("synthetic body counts must all be at least 1");
    if (!(mean_duration >= 1.0)) throw_config("mean activity duration must be at least 1 sample");
    if (!(sample_rate_hz > 0.0)) throw_config("sample rate must be positive");
    if (!(noise >= 0.0) || !(subject_offset_scale >= 0.0)) throw_config("noise and offset scale must be >= 0");
    if (amplitude_max < amplitude_min || frequency_max < frequency_min)
        throw_config("amplitude and frequency ranges must be ordered");
}

BodySynthData generate_body_stream(const BodySynthConfig& config) {
    config.validate();
    Rng rng(config.seed);
    BodySynthData out;
    for (std::size_t a = 0; a < config.activities; ++a) out.classes.intern("act" + std::to_string(a));
    for (std::size_t c = 0; c < config.channels; ++c) out.channel_names.push_back("ch" + std::to_string(c));

    const std::size_t A = config.activities, C = config.channels;
    std::vector<double> amplitude(A * C), frequency(A * C);
    for (std::size_t i = 0; i < A * C; ++i) {
        amplitude[i] = rng.uniform(config.amplitude_min, config.amplitude_max);
        frequency[i] = rng.uniform(config.frequency_min, config.frequency_max);
    }

    for (std::size_t s = 0; s < config.subjects; ++s) {
        std::vector<double> offset(C);
        for (auto& o : offset) o = config.subject_offset_scale * rng.normal();

        std::vector<std::size_t> plan;
        for (std::size_t v = 0; v < config.visits_per_activity; ++v)
            for (std::size_t a = 0; a < A; ++a) plan.push_back(a);
        rng.shuffle(std::span<std::size_t>(plan));

        SampleStream stream;
        stream.source_id = "s" + std::to_string(s + 1);
        stream.subject_id = stream.source_id;
        std::vector<double> phase(C);
        for (std::size_t a : plan) {
            const std::size_t len = draw_duration(rng, config.mean_duration);
            for (auto& ph : phase) ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
            for (std::size_t k = 0; k < len; ++k) {
                const double t = static_cast<double>(k) / config.sample_rate_hz;
                SampleRow row;
                row.index = stream.rows.size();
                row.label = static_cast<ClassId>(a);
                row.subject_id = stream.subject_id;
                row.channels.resize(C);
                for (std::size_t c = 0; c < C; ++c) {
                    const double wave =
                        amplitude[a * C + c] * std::sin(2.0 * std::numbers::pi * frequency[a * C + c] * t + phase[c]);
                    row.channels[c] = wave + offset[c] + config.noise * rng.normal();
                }
                stream.rows.push_back(std::move(row));
            }
        }
        out.streams.push_back(std::move(stream));
    }
    return out;
}

}  // namespace harleak
