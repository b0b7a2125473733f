#include "harleak/model.hpp"

#include <algorithm>

#include "harleak/error.hpp"

namespace harleak {

std::size_t span_overlap(RawSpan a, RawSpan b) noexcept {
    const std::size_t lo = std::max(a.start, b.start);
    const std::size_t hi = std::min(a.end, b.end);
    return hi > lo ? hi - lo : 0;
}

std::size_t raw_overlap(const Window& a, const Window& b) noexcept {
    if (a.source_id != b.source_id) return 0;
    return span_overlap(a.span, b.span);
}

ClassTable::ClassTable(std::vector<std::string> names) {
    for (auto& n : names) intern(n);
}

ClassId ClassTable::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<ClassId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<ClassId> ClassTable::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& ClassTable::name(ClassId id) const {
    if (id >= names_.size()) throw_invariant("class id " + std::to_string(id) + " out of range");
    return names_[id];
}

std::string_view to_string(SplitScheme scheme) noexcept {
    switch (scheme) {
        case SplitScheme::RandomShuffle:
            return "random-shuffle";
        case SplitScheme::StratifiedKFold:
            return "stratified-kfold";
        case SplitScheme::GroupKFold:
            return "group-kfold";
        case SplitScheme::StratifiedGroupKFold:
            return "stratified-group-kfold";
        case SplitScheme::Loso:
            return "loso";
        case SplitScheme::ExplicitHoldout:
            return "explicit-holdout";
    }
    return "unknown";
}

SplitScheme parse_split_scheme(std::string_view text) {
    for (auto s : {SplitScheme::RandomShuffle, SplitScheme::StratifiedKFold, SplitScheme::GroupKFold,
                   SplitScheme::StratifiedGroupKFold, SplitScheme::Loso, SplitScheme::ExplicitHoldout}) {
        if (to_string(s) == text) return s;
    }
    throw_config("unknown split scheme '" + std::string(text) + "'");
}

bool is_group_scheme(SplitScheme scheme) noexcept {
    return scheme == SplitScheme::GroupKFold || scheme == SplitScheme::StratifiedGroupKFold ||
           scheme == SplitScheme::Loso || scheme == SplitScheme::ExplicitHoldout;
}

const Partition* FoldAssignment::find(std::string_view name) const noexcept {
    for (const auto& p : partitions)
        if (p.name == name) return &p;
    return nullptr;
}

const Partition& FoldAssignment::at(std::string_view name) const {
    if (const auto* p = find(name)) return *p;
    throw_invariant("fold assignment has no partition '" + std::string(name) + "'");
}

void FoldAssignment::validate(std::size_t instance_count) const {
    std::vector<char> seen(instance_count, 0);
    std::size_t covered = 0;
    for (const auto& p : partitions) {
        for (std::size_t i : p.indices) {
            if (i >= instance_count)
                throw_invariant("partition '" + p.name + "' references instance " + std::to_string(i) +
                                " beyond " + std::to_string(instance_count));
            if (seen[i]) throw_invariant("instance " + std::to_string(i) + " appears in two partitions");
            seen[i] = 1;
            ++covered;
        }
    }
    if (covered != instance_count)
        throw_invariant("partitions cover " + std::to_string(covered) + " of " + std::to_string(instance_count) +
                        " instances");
}

}  // namespace harleak
