#include "harleak/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "harleak/error.hpp"
#include "harleak/rng.hpp"

namespace harleak {

namespace {

void validate_ratios(std::span<const unsigned> ratios) {
    if (ratios.size() != 2 && ratios.size() != 3)
        throw_config("split ratios need two (train:test) or three (train:validation:test) parts");
    if (std::accumulate(ratios.begin(), ratios.end(), 0u) != 100) throw_config("split ratios must sum to 100");
}

std::string fold_name(std::size_t i) { return "fold" + std::to_string(i + 1); }

struct GroupInfo {
    std::string_view key;
    std::vector<std::size_t> members;
};

// Groups in key order.
std::vector<GroupInfo> collect_groups(std::span<const SplitItem> items) {
    std::map<std::string_view, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < items.size(); ++i) by_key[items[i].group].push_back(i);
    std::vector<GroupInfo> groups;
    groups.reserve(by_key.size());
    for (auto& [key, members] : by_key) groups.push_back({key, std::move(members)});
    return groups;
}

FoldAssignment folds_from(SplitScheme scheme, std::uint64_t seed, std::vector<std::vector<std::size_t>> folds) {
    FoldAssignment a{scheme, seed, {}};
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::sort(folds[f].begin(), folds[f].end());
        a.partitions.push_back({fold_name(f), std::move(folds[f])});
    }
    return a;
}

void require_group_count(std::size_t groups, std::size_t k) {
    if (k < 2) throw_config("fold count k must be at least 2");
    if (groups < k)
        throw_config("only " + std::to_string(groups) + " distinct groups for " + std::to_string(k) + " folds");
}

}  // namespace

void SplitSpec::validate() const {
    switch (scheme) {
        case SplitScheme::RandomShuffle:
            validate_ratios(ratios);
            break;
        case SplitScheme::StratifiedKFold:
        case SplitScheme::GroupKFold:
        case SplitScheme::StratifiedGroupKFold:
            if (k < 2) throw_config("fold count k must be at least 2");
            if (!pooled && test_fold >= k) throw_config("test_fold must be below k");
            break;
        case SplitScheme::Loso:
        case SplitScheme::ExplicitHoldout:
            break;
    }
}

FoldAssignment random_shuffle_split(std::size_t n, std::span<const unsigned> ratios, std::uint64_t seed) {
    validate_ratios(ratios);
    if (n == 0) throw_config("cannot split an empty instance set");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(perm));

    std::vector<std::size_t> sizes(ratios.size());
    std::size_t assigned = 0;
    for (std::size_t p = 1; p < ratios.size(); ++p) {
        sizes[p] = n * ratios[p] / 100;
        assigned += sizes[p];
    }
    sizes[0] = n - assigned;

    const char* names3[] = {"train", "validation", "test"};
    const char* names2[] = {"train", "test"};
    FoldAssignment a{SplitScheme::RandomShuffle, seed, {}};
    std::size_t pos = 0;
    for (std::size_t p = 0; p < ratios.size(); ++p) {
        const char* name = ratios.size() == 3 ? names3[p] : names2[p];
        if (sizes[p] == 0)
            throw_config(std::string("ratio cut leaves partition '") + name + "' empty for " + std::to_string(n) +
                         " instances");
        std::vector<std::size_t> idx(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                                     perm.begin() + static_cast<std::ptrdiff_t>(pos + sizes[p]));
        std::sort(idx.begin(), idx.end());
        a.partitions.push_back({name, std::move(idx)});
        pos += sizes[p];
    }
    return a;
}

FoldAssignment stratified_kfold(std::span<const SplitItem> items, std::size_t k, std::uint64_t seed,
                                std::vector<std::string>* warnings) {
    if (k < 2) throw_config("fold count k must be at least 2");
    if (k > items.size())
        throw_config("k = " + std::to_string(k) + " exceeds the " + std::to_string(items.size()) + " instances");
    std::map<ClassId, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < items.size(); ++i) by_class[items[i].label].push_back(i);

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t offset = 0;
    for (auto& [label, members] : by_class) {
        if (members.size() < k && warnings)
            warnings->push_back("class " + std::to_string(label) + " has " + std::to_string(members.size()) +
                                " members for " + std::to_string(k) + " folds");
        rng.shuffle(std::span<std::size_t>(members));
        for (std::size_t j = 0; j < members.size(); ++j) folds[(offset + j) % k].push_back(members[j]);
        offset = (offset + members.size()) % k;
    }
    return folds_from(SplitScheme::StratifiedKFold, seed, std::move(folds));
}

FoldAssignment group_kfold(std::span<const SplitItem> items, std::size_t k) {
    auto groups = collect_groups(items);
    require_group_count(groups.size(), k);
    std::stable_sort(groups.begin(), groups.end(),
                     [](const GroupInfo& a, const GroupInfo& b) { return a.members.size() > b.members.size(); });
    std::vector<std::vector<std::size_t>> folds(k);
    for (auto& g : groups) {
        auto smallest = std::min_element(folds.begin(), folds.end(),
                                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
        smallest->insert(smallest->end(), g.members.begin(), g.members.end());
    }
    return folds_from(SplitScheme::GroupKFold, 0, std::move(folds));
}

FoldAssignment stratified_group_kfold(std::span<const SplitItem> items, std::size_t k, std::uint64_t seed) {
    auto groups = collect_groups(items);
    require_group_count(groups.size(), k);

    ClassId n_classes = 0;
    for (const auto& it : items) n_classes = std::max<ClassId>(n_classes, it.label + 1);
    std::vector<double> target(n_classes, 0.0);
    for (const auto& it : items) target[it.label] += 1.0;
    for (auto& t : target) t /= static_cast<double>(k);

    Rng rng(seed);
    rng.shuffle(std::span<GroupInfo>(groups));
    std::stable_sort(groups.begin(), groups.end(),
                     [](const GroupInfo& a, const GroupInfo& b) { return a.members.size() > b.members.size(); });

    std::vector<std::vector<double>> fold_counts(k, std::vector<double>(n_classes, 0.0));
    std::vector<std::vector<std::size_t>> folds(k);
    std::vector<double> group_counts(n_classes);
    for (auto& g : groups) {
        std::fill(group_counts.begin(), group_counts.end(), 0.0);
        for (std::size_t i : g.members) group_counts[items[i].label] += 1.0;

        std::size_t best = 0;
        double best_delta = 0.0;
        for (std::size_t f = 0; f < k; ++f) {
            double delta = 0.0;
            for (ClassId c = 0; c < n_classes; ++c) {
                const double before = fold_counts[f][c] - target[c];
                const double after = before + group_counts[c];
                delta += after * after - before * before;
            }
            const bool better = f == 0 || delta < best_delta - 1e-9 ||
                                (std::abs(delta - best_delta) <= 1e-9 && folds[f].size() < folds[best].size());
            if (better) {
                best = f;
                best_delta = delta;
            }
        }
        for (ClassId c = 0; c < n_classes; ++c) fold_counts[best][c] += group_counts[c];
        folds[best].insert(folds[best].end(), g.members.begin(), g.members.end());
    }
    return folds_from(SplitScheme::StratifiedGroupKFold, seed, std::move(folds));
}

std::vector<FoldAssignment> loso_split(std::span<const SplitItem> items) {
    const auto groups = collect_groups(items);
    if (groups.size() < 2)
        throw_config("leave-one-subject-out needs at least two subjects; with a single subject, group by "
                     "collection date instead");
    std::vector<FoldAssignment> out;
    out.reserve(groups.size());
    for (const auto& held : groups) {
        FoldAssignment a{SplitScheme::Loso, 0, {{"train", {}}, {"test", held.members}}};
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i].group != held.key) a.partitions[0].indices.push_back(i);
        out.push_back(std::move(a));
    }
    return out;
}

FoldAssignment explicit_holdout(std::span<const SplitItem> items,
                                const std::map<std::string, std::string>& assignment) {
    const auto groups = collect_groups(items);
    auto partition_of = [](const std::string& name) -> std::size_t {
        if (name == "train") return 0;
        if (name == "validation" || name == "val") return 1;
        if (name == "test") return 2;
        throw_config("unknown holdout partition '" + name + "'");
    };
    for (const auto& [group, part] : assignment) {
        partition_of(part);
        const bool present = std::any_of(groups.begin(), groups.end(), [&](const GroupInfo& g) { return g.key == group; });
        if (!present) throw_config("holdout group '" + group + "' does not occur in the data");
    }
    FoldAssignment a{SplitScheme::ExplicitHoldout, 0, {{"train", {}}, {"validation", {}}, {"test", {}}}};
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto it = assignment.find(std::string(items[i].group));
        a.partitions[it == assignment.end() ? 0 : partition_of(it->second)].indices.push_back(i);
    }
    return a;
}

std::map<std::string, std::string> pamap2_holdout() {
    return {{"101", "validation"}, {"107", "validation"}, {"103", "test"}, {"105", "test"}};
}

std::map<std::string, std::string> mhealth_holdout() {
    return {{"6", "validation"}, {"10", "validation"}, {"2", "test"}, {"9", "test"}};
}

std::vector<FoldAssignment> make_assignments(const SplitSpec& spec, std::span<const SplitItem> items,
                                             std::vector<std::string>* warnings) {
    spec.validate();
    switch (spec.scheme) {
        case SplitScheme::RandomShuffle:
            return {random_shuffle_split(items.size(), spec.ratios, spec.seed)};
        case SplitScheme::StratifiedKFold:
            return {stratified_kfold(items, spec.k, spec.seed, warnings)};
        case SplitScheme::GroupKFold:
            return {group_kfold(items, spec.k)};
        case SplitScheme::StratifiedGroupKFold:
            return {stratified_group_kfold(items, spec.k, spec.seed)};
        case SplitScheme::Loso:
            return loso_split(items);
        case SplitScheme::ExplicitHoldout:
            return {explicit_holdout(items, spec.assignments)};
    }
    throw_invariant("unhandled split scheme");
}

std::vector<EvaluationRound> evaluation_rounds(const SplitSpec& spec, std::span<const FoldAssignment> assignments) {
    std::vector<EvaluationRound> rounds;
    auto merge = [](std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };
    switch (spec.scheme) {
        case SplitScheme::RandomShuffle:
        case SplitScheme::ExplicitHoldout: {
            const auto& a = assignments.front();
            EvaluationRound r;
            merge(r.train, a.at("train").indices);
            if (const auto* v = a.find("validation")) merge(r.train, v->indices);
            std::sort(r.train.begin(), r.train.end());
            r.test = a.at("test").indices;
            rounds.push_back(std::move(r));
            break;
        }
        case SplitScheme::StratifiedKFold:
        case SplitScheme::GroupKFold:
        case SplitScheme::StratifiedGroupKFold: {
            const auto& a = assignments.front();
            for (std::size_t f = 0; f < a.partitions.size(); ++f) {
                if (!spec.pooled && f != spec.test_fold) continue;
                EvaluationRound r;
                for (std::size_t g = 0; g < a.partitions.size(); ++g)
                    if (g != f) merge(r.train, a.partitions[g].indices);
                std::sort(r.train.begin(), r.train.end());
                r.test = a.partitions[f].indices;
                rounds.push_back(std::move(r));
            }
            break;
        }
        case SplitScheme::Loso:
            for (const auto& a : assignments) rounds.push_back({a.at("train").indices, a.at("test").indices});
            break;
    }
    return rounds;
}

}  // namespace harleak
