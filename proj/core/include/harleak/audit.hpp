#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harleak/model.hpp"

namespace harleak {

/// A raw span tagged with its source stream.
struct SpanRef {
    std::string_view source;
    RawSpan span;
};

template <typename Range>
std::vector<SpanRef> span_refs(const Range& instances) {
    std::vector<SpanRef> refs;
    refs.reserve(std::size(instances));
    for (const auto& inst : instances) refs.push_back({inst.source_id, inst.span});
    return refs;
}

template <typename Range>
std::vector<SpanRef> span_refs(const Range& instances, std::span<const std::size_t> indices) {
    std::vector<SpanRef> refs;
    refs.reserve(indices.size());
    for (std::size_t i : indices) refs.push_back({instances[i].source_id, instances[i].span});
    return refs;
}

/// Interval index over training spans, one sorted run per source.
class SpanIndex {
public:
    explicit SpanIndex(std::span<const SpanRef> spans);

    /// True iff some indexed span on the same source shares a raw index.
    bool overlaps(const SpanRef& query) const;
    /// Largest raw_overlap with any indexed span on the same source.
    std::size_t max_overlap(const SpanRef& query) const;

private:
    struct Run {
        std::vector<std::size_t> starts;
        std::vector<std::size_t> ends;
        std::vector<std::size_t> prefix_max_end;
    };
    std::map<std::string, Run, std::less<>> runs_;
};

struct LeakageCounts {
    std::size_t test = 0;
    std::size_t leaking = 0;          // shares >= 1 raw index with a train span
    std::size_t near_duplicate = 0;   // some train span covers >= 50% of it
    std::size_t adjacent = 0;         // some train span within `adjacency` indices

    double fraction() const;
    double near_duplicate_fraction() const;
    double adjacent_fraction() const;
};

/// Counts over test spans. `adjacency` = 0 means "use the test span's own
/// length".
LeakageCounts leakage_counts(std::span<const SpanRef> train, std::span<const SpanRef> test,
                             std::size_t adjacency = 0);

/// Fraction of test instances sharing a raw index with some train
/// instance. Throws on an empty test set.
double leakage_fraction(std::span<const SpanRef> train, std::span<const SpanRef> test);

/// raw_overlap between consecutive same-source windows -> occurrences.
std::map<std::size_t, std::size_t> overlap_histogram(std::span<const Window> windows);

struct IntegrityViolation {
    std::string group_key;
    std::vector<std::string> partitions;
};

/// Every group key present in more than one partition.
template <typename Range>
std::vector<IntegrityViolation> group_integrity(const FoldAssignment& assignment, const Range& instances);

std::vector<IntegrityViolation> group_integrity(const FoldAssignment& assignment,
                                                std::span<const std::string_view> group_keys);

template <typename Range>
std::vector<IntegrityViolation> group_integrity(const FoldAssignment& assignment, const Range& instances) {
    std::vector<std::string_view> keys;
    keys.reserve(std::size(instances));
    for (const auto& inst : instances) keys.push_back(inst.group_key);
    return group_integrity(assignment, std::span<const std::string_view>(keys));
}

}  // namespace harleak
