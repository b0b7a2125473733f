#include "harleak/segment.hpp"

#include "harleak/error.hpp"

namespace harleak {

void SegmentationSpec::validate() const {
    if (size < 1) throw_config("window size must be at least 1");
    if (step < 1) throw_config("window step must be at least 1");
    if (step > size) throw_config("window step must not exceed window size");
}

std::string_view to_string(SegmentMode m) noexcept {
    return m == SegmentMode::EventCount ? "event-count" : "sample-count";
}
std::string_view to_string(LabelRule r) noexcept {
    return r == LabelRule::LastEvent ? "last-event" : "uniform-activity";
}
std::string_view to_string(GroupRule r) noexcept { return r == GroupRule::ByDate ? "by-date" : "by-subject"; }

SegmentMode parse_segment_mode(std::string_view s) {
    if (s == "event-count") return SegmentMode::EventCount;
    if (s == "sample-count") return SegmentMode::SampleCount;
    throw_config("unknown segmentation mode '" + std::string(s) + "'");
}
LabelRule parse_label_rule(std::string_view s) {
    if (s == "last-event") return LabelRule::LastEvent;
    if (s == "uniform-activity") return LabelRule::UniformActivity;
    throw_config("unknown label rule '" + std::string(s) + "'");
}
GroupRule parse_group_rule(std::string_view s) {
    if (s == "by-date") return GroupRule::ByDate;
    if (s == "by-subject") return GroupRule::BySubject;
    throw_config("unknown group rule '" + std::string(s) + "'");
}

std::size_t window_count(std::size_t n, std::size_t size, std::size_t step) noexcept {
    if (size == 0 || step == 0 || n < size) return 0;
    return (n - size) / step + 1;
}

namespace {

// Shared start arithmetic. label_at(i) gives the label of position i;
// group_of(last) the group key for a window ending at `last`.
template <typename LabelAt, typename GroupOf>
std::vector<Window> slide(const std::string& source_id, std::size_t n, const SegmentationSpec& spec,
                          LabelAt&& label_at, GroupOf&& group_of) {
    std::vector<Window> out;
    const std::size_t count = window_count(n, spec.size, spec.step);
    out.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t start = w * spec.step;
        const std::size_t end = start + spec.size;
        const ClassId last = label_at(end - 1);
        if (spec.label_rule == LabelRule::UniformActivity) {
            bool uniform = true;
            for (std::size_t i = start; i + 1 < end && uniform; ++i) uniform = label_at(i) == last;
            if (!uniform) continue;
        }
        out.push_back(Window{source_id, RawSpan{start, end}, last, group_of(end - 1)});
    }
    return out;
}

}  // namespace

std::vector<Window> segment_events(const EventStream& stream, const SegmentationSpec& spec) {
    spec.validate();
    if (spec.mode != SegmentMode::EventCount) throw_config("segment_events needs an event-count spec");
    if (stream.labels.size() != stream.events.size())
        throw_invariant("event stream '" + stream.source_id + "' has unresolved labels");
    return slide(
        stream.source_id, stream.events.size(), spec, [&](std::size_t i) { return stream.labels[i]; },
        [&](std::size_t last) {
            return spec.group_rule == GroupRule::ByDate ? format_date(stream.events[last].timestamp)
                                                        : stream.subject_id;
        });
}

std::vector<Window> segment_samples(const SampleStream& stream, const SegmentationSpec& spec) {
    spec.validate();
    if (spec.mode != SegmentMode::SampleCount) throw_config("segment_samples needs a sample-count spec");
    if (spec.group_rule == GroupRule::ByDate)
        throw_config("sample streams carry no calendar dates; use group_rule by-subject");
    return slide(
        stream.source_id, stream.rows.size(), spec, [&](std::size_t i) { return stream.rows[i].label; },
        [&](std::size_t) { return stream.subject_id; });
}

}  // namespace harleak
