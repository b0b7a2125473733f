#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace harleak {

using TimePoint = std::chrono::sys_time<std::chrono::microseconds>;
using ClassId = std::uint32_t;

inline constexpr std::string_view kOtherClass = "other";

enum class SensorKind { Motion, DoorContact, Temperature };

enum class Marker { Begin, End };

struct ActivityAnnotation {
    std::string activity;
    Marker marker = Marker::Begin;

    bool operator==(const ActivityAnnotation&) const = default;
};

/// One reading from an ambient sensor. Binary sensors store 1.0 for
/// ON/OPEN and 0.0 for OFF/CLOSE; temperature sensors store degrees C.
struct SensorEvent {
    TimePoint timestamp{};
    std::string sensor_id;
    SensorKind kind = SensorKind::Motion;
    double value = 0.0;
    std::optional<ActivityAnnotation> annotation;

    bool is_binary() const noexcept { return kind != SensorKind::Temperature; }
    bool is_on() const noexcept { return is_binary() && value != 0.0; }

    bool operator==(const SensorEvent&) const = default;
};

/// One fixed-rate multichannel reading.
struct SampleRow {
    std::size_t index = 0;
    std::vector<double> channels;
    ClassId label = 0;
    std::string subject_id;

    bool operator==(const SampleRow&) const = default;
};

/// Half-open interval [start, end) of positions in a source stream.
struct RawSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    bool operator==(const RawSpan&) const = default;
};

struct Window {
    std::string source_id;
    RawSpan span;
    ClassId label = 0;
    std::string group_key;

    bool operator==(const Window&) const = default;
};

struct LabeledInstance {
    std::vector<double> features;
    ClassId label = 0;
    std::string group_key;
    RawSpan span;
    std::string source_id;
};

/// Size of the index-set intersection of two windows' raw spans. Windows
/// over different sources never overlap.
std::size_t raw_overlap(const Window& a, const Window& b) noexcept;
std::size_t span_overlap(RawSpan a, RawSpan b) noexcept;

/// Interns activity names to dense ids. Ids are assigned in first-seen
/// order and never change, so the table can be persisted and reloaded.
class ClassTable {
public:
    ClassTable() = default;
    explicit ClassTable(std::vector<std::string> names);

    ClassId intern(std::string_view name);
    std::optional<ClassId> find(std::string_view name) const;
    const std::string& name(ClassId id) const;
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, ClassId> ids_;
};

// ---------------------------------------------------------------------------
// Fold assignments

enum class SplitScheme {
    RandomShuffle,
    StratifiedKFold,
    GroupKFold,
    StratifiedGroupKFold,
    Loso,
    ExplicitHoldout,
};

std::string_view to_string(SplitScheme scheme) noexcept;
SplitScheme parse_split_scheme(std::string_view text);
bool is_group_scheme(SplitScheme scheme) noexcept;

struct Partition {
    std::string name;
    std::vector<std::size_t> indices;

    bool operator==(const Partition&) const = default;
};

struct FoldAssignment {
    SplitScheme scheme = SplitScheme::RandomShuffle;
    std::uint64_t seed = 0;
    std::vector<Partition> partitions;

    const Partition* find(std::string_view name) const noexcept;
    const Partition& at(std::string_view name) const;

    /// Throws an invariant error unless the partitions are disjoint and
    /// cover exactly {0, ..., instance_count - 1}.
    void validate(std::size_t instance_count) const;

    bool operator==(const FoldAssignment&) const = default;
};

}  // namespace harleak
