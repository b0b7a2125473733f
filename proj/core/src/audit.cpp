#include "harleak/audit.hpp"

#include <algorithm>
#include <numeric>

#include "harleak/error.hpp"

namespace harleak {

SpanIndex::SpanIndex(std::span<const SpanRef> spans) {
    std::map<std::string_view, std::vector<RawSpan>> by_source;
    for (const auto& s : spans) by_source[s.source].push_back(s.span);
    for (auto& [source, list] : by_source) {
        std::sort(list.begin(), list.end(),
                  [](RawSpan a, RawSpan b) { return a.start != b.start ? a.start < b.start : a.end < b.end; });
        Run run;
        run.starts.reserve(list.size());
        run.ends.reserve(list.size());
        run.prefix_max_end.reserve(list.size());
        std::size_t best = 0;
        for (const auto& s : list) {
            run.starts.push_back(s.start);
            run.ends.push_back(s.end);
            best = std::max(best, s.end);
            run.prefix_max_end.push_back(best);
        }
        runs_.emplace(std::string(source), std::move(run));
    }
}

bool SpanIndex::overlaps(const SpanRef& query) const {
    auto it = runs_.find(query.source);
    if (it == runs_.end() || query.span.length() == 0) return false;
    const auto& run = it->second;
    // Spans starting before query.end; one of them reaches past query.start iff
    // their maximum end does.
    const auto n = static_cast<std::size_t>(std::lower_bound(run.starts.begin(), run.starts.end(), query.span.end) -
                                            run.starts.begin());
    return n > 0 && run.prefix_max_end[n - 1] > query.span.start;
}

std::size_t SpanIndex::max_overlap(const SpanRef& query) const {
    auto it = runs_.find(query.source);
    if (it == runs_.end()) return 0;
    const auto& run = it->second;
    const auto [qs, qe] = query.span;
    std::size_t best = 0;
    // Spans starting at or before qs overlap by min(end, qe) - qs.
    const auto j = static_cast<std::size_t>(std::upper_bound(run.starts.begin(), run.starts.end(), qs) -
                                            run.starts.begin());
    if (j > 0) {
        const std::size_t reach = std::min(run.prefix_max_end[j - 1], qe);
        if (reach > qs) best = reach - qs;
    }
    // Spans starting inside the query.
    for (std::size_t i = j; i < run.starts.size() && run.starts[i] < qe; ++i)
        best = std::max(best, std::min(run.ends[i], qe) - run.starts[i]);
    return best;
}

namespace {
double ratio(std::size_t num, std::size_t den) {
    if (den == 0) throw_config("leakage audit over an empty test set");
    return static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

double LeakageCounts::fraction() const { return ratio(leaking, test); }
double LeakageCounts::near_duplicate_fraction() const { return ratio(near_duplicate, test); }
double LeakageCounts::adjacent_fraction() const { return ratio(adjacent, test); }

LeakageCounts leakage_counts(std::span<const SpanRef> train, std::span<const SpanRef> test, std::size_t adjacency) {
    const SpanIndex index(train);
    LeakageCounts c;
    c.test = test.size();
    for (const auto& q : test) {
        if (index.overlaps(q)) ++c.leaking;
        const std::size_t len = q.span.length();
        if (len > 0 && 2 * index.max_overlap(q) >= len) ++c.near_duplicate;
        const std::size_t k = adjacency ? adjacency : len;
        const SpanRef widened{q.source, {q.span.start > k ? q.span.start - k : 0, q.span.end + k}};
        if (index.overlaps(widened)) ++c.adjacent;
    }
    return c;
}

double leakage_fraction(std::span<const SpanRef> train, std::span<const SpanRef> test) {
    if (test.empty()) throw_config("leakage_fraction: empty test set");
    return leakage_counts(train, test).fraction();
}

std::map<std::size_t, std::size_t> overlap_histogram(std::span<const Window> windows) {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (windows[i].source_id != windows[i - 1].source_id) continue;
        ++hist[raw_overlap(windows[i - 1], windows[i])];
    }
    return hist;
}

std::vector<IntegrityViolation> group_integrity(const FoldAssignment& assignment,
                                                std::span<const std::string_view> group_keys) {
    std::map<std::string_view, std::vector<std::size_t>> seen_in;
    for (std::size_t p = 0; p < assignment.partitions.size(); ++p) {
        for (std::size_t i : assignment.partitions[p].indices) {
            if (i >= group_keys.size()) throw_invariant("fold assignment references a missing instance");
            auto& parts = seen_in[group_keys[i]];
            if (parts.empty() || parts.back() != p) parts.push_back(p);
        }
    }
    std::vector<IntegrityViolation> out;
    for (const auto& [key, parts] : seen_in) {
        if (parts.size() < 2) continue;
        IntegrityViolation v{std::string(key), {}};
        for (std::size_t p : parts) v.partitions.push_back(assignment.partitions[p].name);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace harleak
