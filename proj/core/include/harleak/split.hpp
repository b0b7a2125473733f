#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harleak/model.hpp"

namespace harleak {

/// What a splitter needs to know about one instance.
struct SplitItem {
    ClassId label = 0;
    std::string_view group;
};

/// The items view borrows group keys from the source range.
template <typename Range>
std::vector<SplitItem> split_items(const Range& instances) {
    std::vector<SplitItem> items;
    items.reserve(std::size(instances));
    for (const auto& inst : instances) items.push_back({inst.label, inst.group_key});
    return items;
}

struct SplitSpec {
    SplitScheme scheme = SplitScheme::RandomShuffle;
    std::vector<unsigned> ratios{80, 20};
    std::size_t k = 5;
    std::size_t test_fold = 0;  // k-fold schemes evaluated as a single holdout
    bool pooled = false;        // evaluate every fold in turn and pool predictions
    std::uint64_t seed = 0;
    std::map<std::string, std::string> assignments;  // explicit-holdout: group -> partition

    void validate() const;
};

/// Seeded permutation cut at the ratio boundaries. Partitions are "train",
/// ["validation",] "test"; non-train sizes are floor(n * r / 100) and the
/// remainder goes to train.
FoldAssignment random_shuffle_split(std::size_t n, std::span<const unsigned> ratios, std::uint64_t seed);

/// Round-robin deal of each class's shuffled members over "fold1".."foldk".
FoldAssignment stratified_kfold(std::span<const SplitItem> items, std::size_t k, std::uint64_t seed,
                                std::vector<std::string>* warnings = nullptr);

/// Largest group first into the fold with fewest instances. Deterministic.
FoldAssignment group_kfold(std::span<const SplitItem> items, std::size_t k);

/// Groups stay whole; each placement minimises the squared deviation of
/// per-fold class counts from the global class proportions scaled to an
/// even fold size.
FoldAssignment stratified_group_kfold(std::span<const SplitItem> items, std::size_t k, std::uint64_t seed);

/// One "train"/"test" assignment per group, in group-key order.
std::vector<FoldAssignment> loso_split(std::span<const SplitItem> items);

/// Partitions "train", "validation", "test" exactly as mapped; unmapped
/// groups go to train.
FoldAssignment explicit_holdout(std::span<const SplitItem> items,
                                const std::map<std::string, std::string>& assignment);

std::map<std::string, std::string> pamap2_holdout();
std::map<std::string, std::string> mhealth_holdout();

/// Training/test index sets for one evaluation round.
struct EvaluationRound {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// All assignments a spec produces (several for LOSO).
std::vector<FoldAssignment> make_assignments(const SplitSpec& spec, std::span<const SplitItem> items,
                                             std::vector<std::string>* warnings = nullptr);

/// Evaluation rounds for an assignment produced by make_assignments.
/// Validation partitions are folded into training.
std::vector<EvaluationRound> evaluation_rounds(const SplitSpec& spec,
                                               std::span<const FoldAssignment> assignments);

}  // namespace harleak
