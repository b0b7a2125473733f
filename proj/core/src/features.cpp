#include "harleak/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_set>

#include "harleak/error.hpp"

namespace harleak {

FeatureSchema::FeatureSchema(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string_view> seen;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) throw_invariant("duplicate feature slot '" + n + "'");
        for (unsigned char c : n) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;  // separator
        h *= 0x100000001b3ULL;
    }
    fingerprint_ = h;
}

SensorIndex SensorIndex::from_streams(std::span<const EventStream> streams) {
    std::map<std::string, SensorKind> kinds;
    for (const auto& s : streams)
        for (const auto& ev : s.events) kinds.emplace(ev.sensor_id, ev.kind);
    SensorIndex index;
    for (const auto& [id, kind] : kinds) {
        const std::size_t i = index.ids_.size();
        index.ids_.push_back(id);
        index.kinds_.push_back(kind);
        if (kind != SensorKind::Temperature) index.binary_.push_back(i);
        index.lookup_.emplace(id, i);
    }
    return index;
}

std::size_t SensorIndex::index_of(std::string_view id) const {
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end()) throw_config("unknown sensor '" + std::string(id) + "'");
    return it->second;
}

MIMatrix compute_mi_matrix(std::span<const std::span<const SensorEvent>> runs, const SensorIndex& sensors,
                           std::vector<std::string>* warnings) {
    MIMatrix mi(sensors.size());
    std::size_t pairs = 0;
    for (const auto& run : runs) {
        for (std::size_t i = 1; i < run.size(); ++i) {
            mi.at(sensors.index_of(run[i - 1].sensor_id), sensors.index_of(run[i].sensor_id)) += 1.0;
            ++pairs;
        }
    }
    if (pairs == 0) {
        if (warnings) warnings->push_back("MI matrix fit on fewer than two events; all weights are zero");
        return mi;
    }
    const double total = static_cast<double>(pairs);
    for (std::size_t i = 0; i < mi.size(); ++i)
        for (std::size_t j = 0; j < mi.size(); ++j) mi.at(i, j) /= total;
    mi.set_pair_count(pairs);
    return mi;
}

MIMatrix compute_mi_matrix(std::span<const SensorEvent> events, const SensorIndex& sensors,
                           std::vector<std::string>* warnings) {
    const std::span<const SensorEvent> runs[] = {events};
    return compute_mi_matrix(runs, sensors, warnings);
}

std::pair<double, double> cyclic_encode(double value, double period) {
    if (!(period > 0.0)) throw_invariant("cyclic_encode: period must be positive");
    const double angle = 2.0 * std::numbers::pi * value / period;
    return {std::sin(angle), std::cos(angle)};
}

double window_entropy(std::span<const SensorEvent> events) {
    if (events.empty()) return 0.0;
    std::map<std::string_view, std::size_t> counts;
    for (const auto& ev : events) ++counts[ev.sensor_id];
    const double n = static_cast<double>(events.size());
    double h = 0.0;
    for (const auto& [id, c] : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double sparsity(std::span<const double> counts) {
    if (counts.empty()) throw_invariant("sparsity of an empty vector");
    const auto nonzero = std::count_if(counts.begin(), counts.end(), [](double c) { return c != 0.0; });
    return 1.0 - static_cast<double>(nonzero) / static_cast<double>(counts.size());
}

// ---------------------------------------------------------------------------

EventFeatureExtractor::EventFeatureExtractor(SensorIndex sensors, const LocationMap& locations)
    : sensors_(std::move(sensors)) {
    std::set<std::string> rooms;
    for (const auto& id : sensors_.ids()) {
        auto it = locations.find(id);
        if (it == locations.end()) throw_config("sensor '" + id + "' is missing from the location map");
        rooms.insert(it->second);
    }
    rooms_.assign(rooms.begin(), rooms.end());
    for (const auto& id : sensors_.ids()) {
        const auto& room = locations.at(id);
        room_of_sensor_.push_back(
            static_cast<std::size_t>(std::lower_bound(rooms_.begin(), rooms_.end(), room) - rooms_.begin()));
    }

    std::vector<std::string> names{"hour_sin", "hour_cos", "dow_sin", "dow_cos"};
    act_offset_ = names.size();
    act_slot_.assign(sensors_.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < sensors_.binary_sensors().size(); ++k) {
        const std::size_t s = sensors_.binary_sensors()[k];
        act_slot_[s] = k;
        names.push_back("act[" + sensors_.ids()[s] + "]");
    }
    tail_offset_ = names.size();
    for (const char* n : {"last_status", "avg_temp", "temp_present", "entropy", "sparsity"}) names.emplace_back(n);
    for (const auto& r : rooms_) names.push_back("last_location[" + r + "]");
    for (const auto& r : rooms_) names.push_back("last_motion_location[" + r + "]");
    schema_ = FeatureSchema(std::move(names));
}

std::vector<double> EventFeatureExtractor::extract(std::span<const SensorEvent> window, const MIMatrix& mi) const {
    if (window.empty()) throw_invariant("feature extraction on an empty window");
    if (mi.size() != sensors_.size()) throw_invariant("MI matrix does not match the sensor index");
    std::vector<double> f(schema_.size(), 0.0);
    const auto& last = window.back();
    const std::size_t last_sensor = sensors_.index_of(last.sensor_id);

    using namespace std::chrono;
    const auto day = floor<days>(last.timestamp);
    const double hour = duration<double, std::ratio<3600>>(last.timestamp - day).count();
    const double dow = static_cast<double>(weekday{day}.iso_encoding() - 1);  // Monday = 0
    std::tie(f[0], f[1]) = cyclic_encode(hour, 24.0);
    std::tie(f[2], f[3]) = cyclic_encode(dow, 7.0);

    const std::size_t n_act = sensors_.binary_sensors().size();
    std::vector<double> counts(n_act, 0.0);
    double temp_sum = 0.0;
    std::size_t temp_n = 0;
    std::size_t last_motion = static_cast<std::size_t>(-1);
    for (const auto& ev : window) {
        const std::size_t s = sensors_.index_of(ev.sensor_id);
        switch (ev.kind) {
            case SensorKind::Motion:
                if (ev.is_on()) counts[act_slot_[s]] += 1.0;
                last_motion = s;
                break;
            case SensorKind::DoorContact:
                counts[act_slot_[s]] += 1.0;
                break;
            case SensorKind::Temperature:
                temp_sum += ev.value;
                ++temp_n;
                break;
        }
    }
    for (std::size_t k = 0; k < n_act; ++k)
        f[act_offset_ + k] = counts[k] * mi.at(sensors_.binary_sensors()[k], last_sensor);

    std::size_t t = tail_offset_;
    f[t++] = last.is_on() ? 1.0 : 0.0;
    f[t++] = temp_n ? temp_sum / static_cast<double>(temp_n) : 0.0;
    f[t++] = temp_n ? 1.0 : 0.0;
    f[t++] = window_entropy(window);
    f[t++] = n_act ? sparsity(counts) : 1.0;
    f[t + room_of_sensor_[last_sensor]] = 1.0;
    t += rooms_.size();
    if (last_motion != static_cast<std::size_t>(-1)) f[t + room_of_sensor_[last_motion]] = 1.0;
    return f;
}

// ---------------------------------------------------------------------------

std::vector<double> sample_window_stats(std::span<const SampleRow> rows) {
    if (rows.empty()) throw_invariant("statistics of an empty window");
    const std::size_t n_ch = rows.front().channels.size();
    const double n = static_cast<double>(rows.size());
    std::vector<double> out;
    out.reserve(4 * n_ch);
    for (std::size_t c = 0; c < n_ch; ++c) {
        double sum = 0.0;
        double lo = rows.front().channels[c];
        double hi = lo;
        for (const auto& r : rows) {
            const double v = r.channels[c];
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : rows) {
            const double d = r.channels[c] - mean;
            ss += d * d;
        }
        out.push_back(mean);
        out.push_back(std::sqrt(ss / n));
        out.push_back(lo);
        out.push_back(hi);
    }
    return out;
}

FeatureSchema sample_stats_schema(std::span<const std::string> channel_names) {
    std::vector<std::string> names;
    for (const auto& ch : channel_names)
        for (const char* stat : {"_mean", "_std", "_min", "_max"}) names.push_back(ch + stat);
    return FeatureSchema(std::move(names));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw_invariant("pearson: series lengths differ or are empty");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

bool ChannelGraph::has_edge(std::size_t a, std::size_t b) const noexcept {
    if (a > b) std::swap(a, b);
    return std::any_of(edges.begin(), edges.end(), [&](const ChannelEdge& e) { return e.a == a && e.b == b; });
}

ChannelGraph correlation_graph(std::span<const SampleRow> rows, double threshold) {
    if (rows.size() < 2) throw_invariant("correlation graph needs at least two samples");
    ChannelGraph g;
    g.channels = rows.front().channels.size();
    std::vector<std::vector<double>> series(g.channels, std::vector<double>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < g.channels; ++c) series[c][i] = rows[i].channels[c];
    for (std::size_t a = 0; a < g.channels; ++a) {
        for (std::size_t b = a + 1; b < g.channels; ++b) {
            const double r = pearson(series[a], series[b]);
            if (r > threshold) g.edges.push_back({a, b, r});
        }
    }
    return g;
}

}  // namespace harleak
