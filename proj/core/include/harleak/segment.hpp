#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "harleak/ingest.hpp"
#include "harleak/model.hpp"

namespace harleak {

enum class SegmentMode { EventCount, SampleCount };
enum class LabelRule { LastEvent, UniformActivity };
enum class GroupRule { ByDate, BySubject };

struct SegmentationSpec {
    SegmentMode mode = SegmentMode::EventCount;
    std::size_t size = 30;
    std::size_t step = 1;
    LabelRule label_rule = LabelRule::LastEvent;
    GroupRule group_rule = GroupRule::ByDate;

    void validate() const;
    double overlap_fraction() const noexcept {
        return 1.0 - static_cast<double>(step) / static_cast<double>(size);
    }
};

std::string_view to_string(SegmentMode m) noexcept;
std::string_view to_string(LabelRule r) noexcept;
std::string_view to_string(GroupRule r) noexcept;
SegmentMode parse_segment_mode(std::string_view s);
LabelRule parse_label_rule(std::string_view s);
GroupRule parse_group_rule(std::string_view s);

/// max(0, floor((n - size) / step) + 1): the number of full windows.
std::size_t window_count(std::size_t n, std::size_t size, std::size_t step) noexcept;

std::vector<Window> segment_events(const EventStream& stream, const SegmentationSpec& spec);
std::vector<Window> segment_samples(const SampleStream& stream, const SegmentationSpec& spec);

}  // namespace harleak
