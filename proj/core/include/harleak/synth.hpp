#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "harleak/ingest.hpp"
#include "harleak/model.hpp"

namespace harleak {

/// Semi-Markov smart-home resident. Visits follow a uniform transition
/// matrix without self-transitions; visit lengths are geometric with mean
/// mean_duration events (support starts at 2 when the mean allows it, so
/// every visit can carry begin and end markers). Visits end at midnight and
/// each day is its own stream, so date groups never share a window.
struct AmbientSynthConfig {
    std::size_t activities = 8;
    std::size_t sensors = 20;  // motion + door-contact
    std::size_t temperature_sensors = 1;
    double mean_duration = 60.0;
    // Sensor weight for activity a is exp(-concentration * distance to a's
    // mode sensor). 0 is uniform, infinity is a single sensor per activity.
    double concentration = 0.35;
    double noise = 0.1;  // mixture weight of a uniform sensor draw
    double temperature_rate = 0.02;
    std::size_t days = 10;
    std::size_t events_per_day = 400;
    std::uint64_t seed = 42;

    void validate() const;
};

struct AmbientSynthData {
    ClassTable classes;  // "other" first, then act0..
    std::vector<EventStream> streams;  // one per day, source id = date; labels from ground truth
    LocationMap locations;
};

AmbientSynthData generate_ambient_stream(const AmbientSynthConfig& config);

/// Body-worn IMU stand-in. Channel c during activity a for subject s is
/// A(a,c) sin(2 pi f(a,c) t + phi) + offset(s,c) + N(0, noise^2).
struct BodySynthConfig {
    std::size_t activities = 6;
    std::size_t channels = 9;
    std::size_t subjects = 8;
    std::size_t visits_per_activity = 2;
    double mean_duration = 1000.0;  // samples per visit
    double sample_rate_hz = 50.0;
    double amplitude_min = 0.9;
    double amplitude_max = 1.1;  // equal to amplitude_min: no amplitude signal
    double frequency_min = 0.5;  // Hz
    double frequency_max = 3.0;
    double subject_offset_scale = 1.0;
    double noise = 0.8;
    std::uint64_t seed = 42;

    void validate() const;
};

struct BodySynthData {
    ClassTable classes;
    std::vector<std::string> channel_names;
    std::vector<SampleStream> streams;  // one per subject, "s1".."sN"
};

BodySynthData generate_body_stream(const BodySynthConfig& config);

}  // namespace harleak
