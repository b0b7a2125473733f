#include "harleak/metrics.hpp"

#include "harleak/error.hpp"

namespace harleak {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), counts_(classes_.size() * classes_.size(), 0) {}

void ConfusionMatrix::add(ClassId truth, ClassId predicted) {
    if (truth >= size() || predicted >= size()) throw_invariant("label outside the confusion matrix class table");
    ++counts_[truth * size() + predicted];
}

std::uint64_t ConfusionMatrix::row_sum(ClassId truth) const {
    std::uint64_t s = 0;
    for (ClassId p = 0; p < size(); ++p) s += at(truth, p);
    return s;
}

std::uint64_t ConfusionMatrix::col_sum(ClassId predicted) const {
    std::uint64_t s = 0;
    for (ClassId t = 0; t < size(); ++t) s += at(t, predicted);
    return s;
}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
}

namespace {
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}
}  // namespace

std::string ConfusionMatrix::to_csv() const {
    std::string out = "truth\\predicted";
    for (const auto& c : classes_) out += "," + csv_field(c);
    out += '\n';
    for (ClassId t = 0; t < size(); ++t) {
        out += csv_field(classes_[t]);
        for (ClassId p = 0; p < size(); ++p) out += "," + std::to_string(at(t, p));
        out += '\n';
    }
    return out;
}

ConfusionMatrix confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
                          const std::vector<std::string>& classes) {
    if (truth.size() != predicted.size())
        throw_invariant("confusion: " + std::to_string(truth.size()) + " truths vs " +
                        std::to_string(predicted.size()) + " predictions");
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
    return cm;
}

double balanced_accuracy(const ConfusionMatrix& cm) {
    double sum = 0.0;
    std::size_t supported = 0;
    for (ClassId c = 0; c < cm.size(); ++c) {
        const auto support = cm.row_sum(c);
        if (support == 0) continue;
        sum += static_cast<double>(cm.at(c, c)) / static_cast<double>(support);
        ++supported;
    }
    if (supported == 0) throw_invariant("balanced accuracy of an empty confusion matrix");
    return sum / static_cast<double>(supported);
}

std::vector<double> per_class_f1(const ConfusionMatrix& cm) {
    std::vector<double> f1(cm.size(), 0.0);
    for (ClassId c = 0; c < cm.size(); ++c) {
        const double tp = static_cast<double>(cm.at(c, c));
        const auto predicted = cm.col_sum(c);
        const auto support = cm.row_sum(c);
        const double precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
        const double recall = support ? tp / static_cast<double>(support) : 0.0;
        f1[c] = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    }
    return f1;
}

double weighted_f1(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) throw_invariant("weighted F1 of an empty confusion matrix");
    const auto f1 = per_class_f1(cm);
    double sum = 0.0;
    for (ClassId c = 0; c < cm.size(); ++c) sum += static_cast<double>(cm.row_sum(c)) * f1[c];
    return sum / static_cast<double>(total);
}

double accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) throw_invariant("accuracy of an empty confusion matrix");
    std::uint64_t diag = 0;
    for (ClassId c = 0; c < cm.size(); ++c) diag += cm.at(c, c);
    return static_cast<double>(diag) / static_cast<double>(total);
}

}  // namespace harleak
