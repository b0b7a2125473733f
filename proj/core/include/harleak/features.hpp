#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "harleak/ingest.hpp"
#include "harleak/model.hpp"

namespace harleak {

/// Ordered, uniquely named feature slots.
class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    /// FNV-1a over the slot names; equal schemas have equal fingerprints.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

private:
    std::vector<std::string> names_;
    std::uint64_t fingerprint_ = 0;
};

/// Dense index over sensor ids. Binary sensors (motion, contact) get an
/// activation slot; temperature sensors are tracked but have no slot.
class SensorIndex {
public:
    SensorIndex() = default;
    /// Collects every sensor seen in the streams, sorted by id.
    static SensorIndex from_streams(std::span<const EventStream> streams);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    SensorKind kind(std::size_t i) const { return kinds_.at(i); }
    std::size_t index_of(std::string_view id) const;  // throws on unknown id

    /// Positions of binary sensors, in index order.
    const std::vector<std::size_t>& binary_sensors() const noexcept { return binary_; }

private:
    std::vector<std::string> ids_;
    std::vector<SensorKind> kinds_;
    std::vector<std::size_t> binary_;
    std::unordered_map<std::string, std::size_t> lookup_;
};

/// First-order sensor transition frequencies:
/// at(i, j) = #(consecutive pairs i then j) / #(consecutive pairs).
class MIMatrix {
public:
    MIMatrix() = default;
    explicit MIMatrix(std::size_t sensors) : n_(sensors), values_(sensors * sensors, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double at(std::size_t from, std::size_t to) const { return values_[from * n_ + to]; }
    double& at(std::size_t from, std::size_t to) { return values_[from * n_ + to]; }
    std::size_t pair_count() const noexcept { return pairs_; }
    void set_pair_count(std::size_t pairs) noexcept { pairs_ = pairs; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
    std::size_t pairs_ = 0;
};

/// Counts transitions within each run; pairs never cross run boundaries.
/// Fewer than two events overall yields the zero matrix and a warning.
MIMatrix compute_mi_matrix(std::span<const std::span<const SensorEvent>> runs, const SensorIndex& sensors,
                           std::vector<std::string>* warnings = nullptr);
MIMatrix compute_mi_matrix(std::span<const SensorEvent> events, const SensorIndex& sensors,
                           std::vector<std::string>* warnings = nullptr);

/// (sin(2 pi v / period), cos(2 pi v / period)).
std::pair<double, double> cyclic_encode(double value, double period);

/// Shannon entropy in bits of the sensor-id distribution.
double window_entropy(std::span<const SensorEvent> events);

/// 1 - (nonzero entries / length). Throws on an empty vector.
double sparsity(std::span<const double> counts);

/// Feature extraction for event-count windows over ambient sensors.
class EventFeatureExtractor {
public:
    EventFeatureExtractor(SensorIndex sensors, const LocationMap& locations);

    const FeatureSchema& schema() const noexcept { return schema_; }
    const SensorIndex& sensors() const noexcept { return sensors_; }
    const std::vector<std::string>& rooms() const noexcept { return rooms_; }

    std::vector<double> extract(std::span<const SensorEvent> window, const MIMatrix& mi) const;

private:
    SensorIndex sensors_;
    std::vector<std::string> rooms_;
    std::vector<std::size_t> room_of_sensor_;
    std::vector<std::size_t> act_slot_;  // sensor index -> activation slot, or npos
    FeatureSchema schema_;
    std::size_t act_offset_ = 0;
    std::size_t tail_offset_ = 0;
};

/// Per channel: mean, population std, min, max; concatenated by channel.
std::vector<double> sample_window_stats(std::span<const SampleRow> rows);
FeatureSchema sample_stats_schema(std::span<const std::string> channel_names);

double pearson(std::span<const double> x, std::span<const double> y);

struct ChannelEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double correlation = 0.0;
};

struct ChannelGraph {
    std::size_t channels = 0;
    std::vector<ChannelEdge> edges;  // a < b

    bool has_edge(std::size_t a, std::size_t b) const noexcept;
};

/// Edge between two channels iff their Pearson correlation over the window
/// exceeds threshold. Zero-variance channels correlate 0 with everything.
ChannelGraph correlation_graph(std::span<const SampleRow> rows, double threshold = 0.2);

}  // namespace harleak
