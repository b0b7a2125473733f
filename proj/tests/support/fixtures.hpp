#pragma once
// Small builders shared by unit and acceptance tests.

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "harleak/features.hpp"
#include "harleak/forest.hpp"
#include "harleak/ingest.hpp"
#include "harleak/model.hpp"
#include "harleak/rng.hpp"
#include "harleak/segment.hpp"

namespace fixtures {

inline harleak::TimePoint at(int y, unsigned m, unsigned d, int hh = 0, int mm = 0, int ss = 0) {
    using namespace std::chrono;
    return harleak::TimePoint{sys_days{year{y} / month{m} / day{d}}} + hours{hh} + minutes{mm} + seconds{ss};
}

inline harleak::SensorEvent motion(std::string id, bool on, harleak::TimePoint t) {
    harleak::SensorEvent e;
    e.timestamp = t;
    e.sensor_id = std::move(id);
    e.kind = harleak::SensorKind::Motion;
    e.value = on ? 1.0 : 0.0;
    return e;
}

// One event per second from `start`, all motion ON.
inline std::vector<harleak::SensorEvent> sequence(const std::vector<std::string>& ids,
                                                  harleak::TimePoint start = at(2009, 10, 16, 8)) {
    std::vector<harleak::SensorEvent> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        out.push_back(motion(ids[i], true, start + std::chrono::seconds(static_cast<long>(i))));
    return out;
}

inline harleak::EventStream event_stream(std::size_t n, std::string source = "src") {
    harleak::EventStream s;
    s.source_id = std::move(source);
    s.subject_id = "resident";
    for (std::size_t i = 0; i < n; ++i) {
        s.events.push_back(motion("M" + std::to_string(i % 3), true, at(2009, 10, 16) + std::chrono::minutes(i)));
        s.labels.push_back(static_cast<harleak::ClassId>(i % 2));
    }
    return s;
}

inline harleak::SampleStream sample_stream(std::size_t n, std::string subject = "s1", harleak::ClassId label = 0) {
    harleak::SampleStream s;
    s.source_id = subject;
    s.subject_id = subject;
    for (std::size_t i = 0; i < n; ++i)
        s.rows.push_back({i, {static_cast<double>(i), 1.0}, label, subject});
    return s;
}

// Windows over several sources where every source is its own group, with
// random counts, sizes and steps: the shape of a subject- or date-aligned
// dataset.
struct WindowSet {
    std::vector<harleak::Window> windows;
    std::size_t groups = 0;
};

inline WindowSet aligned_windows(std::uint64_t seed, std::size_t min_groups = 5) {
    harleak::Rng rng(seed);
    WindowSet out;
    out.groups = min_groups + rng.uniform_index(6);
    const std::size_t size = 4 + rng.uniform_index(60);
    const std::size_t step = 1 + rng.uniform_index(size);
    const std::size_t classes = 2 + rng.uniform_index(4);
    for (std::size_t g = 0; g < out.groups; ++g) {
        const std::string key = "g" + std::to_string(g);
        const std::size_t n = size + rng.uniform_index(40 * step + size);
        const std::size_t count = harleak::window_count(n, size, step);
        harleak::ClassId label = static_cast<harleak::ClassId>(rng.uniform_index(classes));
        for (std::size_t w = 0; w < count; ++w) {
            if (rng.uniform01() < 0.1) label = static_cast<harleak::ClassId>(rng.uniform_index(classes));
            out.windows.push_back({key, {w * step, w * step + size}, label, key});
        }
    }
    return out;
}

// Two Gaussian blobs per class centre, well separated.
inline std::vector<harleak::LabeledInstance> blobs(std::size_t per_class, std::size_t classes, std::size_t dims,
                                                   std::uint64_t seed, double separation = 6.0) {
    harleak::Rng rng(seed);
    std::vector<harleak::LabeledInstance> out;
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            harleak::LabeledInstance inst;
            for (std::size_t d = 0; d < dims; ++d)
                inst.features.push_back((d == c % dims ? separation * static_cast<double>(1 + c / dims) : 0.0) +
                                        rng.normal());
            inst.label = static_cast<harleak::ClassId>(c);
            inst.group_key = "g" + std::to_string(i % 4);
            inst.span = {i, i + 1};
            inst.source_id = "c" + std::to_string(c);
            out.push_back(std::move(inst));
        }
    }
    return out;
}

inline std::vector<std::size_t> iota(std::size_t n, std::size_t from = 0) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = from + i;
    return v;
}

inline harleak::FeatureSchema numbered_schema(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("f" + std::to_string(i));
    return harleak::FeatureSchema(std::move(names));
}

}  // namespace fixtures
