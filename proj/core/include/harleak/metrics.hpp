#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "harleak/model.hpp"

namespace harleak {

/// Rows are truth, columns are prediction.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::vector<std::string> classes);

    std::size_t size() const noexcept { return classes_.size(); }
    const std::vector<std::string>& classes() const noexcept { return classes_; }
    std::uint64_t at(ClassId truth, ClassId predicted) const { return counts_[truth * size() + predicted]; }
    void add(ClassId truth, ClassId predicted);

    std::uint64_t row_sum(ClassId truth) const;
    std::uint64_t col_sum(ClassId predicted) const;
    std::uint64_t total() const;

    /// CSV with a header row and first column of class names.
    std::string to_csv() const;

private:
    std::vector<std::string> classes_;
    std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
                          const std::vector<std::string>& classes);

/// Mean recall over classes with nonzero support.
double balanced_accuracy(const ConfusionMatrix& cm);

/// F1 per class; 0 when precision + recall = 0.
std::vector<double> per_class_f1(const ConfusionMatrix& cm);

/// Support-weighted mean of per_class_f1.
double weighted_f1(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);

}  // namespace harleak
