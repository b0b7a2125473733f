#pragma once
// Reference implementations used only by tests. Each one is written the
// slow, obvious way and shares no code with the library.

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Span {
    std::string source;
    std::size_t start;
    std::size_t end;
};

// Counts shared raw indices by enumerating them.
inline std::size_t shared_indices(const Span& a, const Span& b) {
    if (a.source != b.source) return 0;
    std::size_t n = 0;
    for (std::size_t i = a.start; i < a.end; ++i)
        if (i >= b.start && i < b.end) ++n;
    return n;
}

// O(train x test) pairwise check.
inline std::size_t leaking_test_count(const std::vector<Span>& train, const std::vector<Span>& test) {
    std::size_t leaking = 0;
    for (const auto& t : test) {
        for (const auto& r : train) {
            if (t.source == r.source && std::max(t.start, r.start) < std::min(t.end, r.end)) {
                ++leaking;
                break;
            }
        }
    }
    return leaking;
}

inline double leakage_fraction(const std::vector<Span>& train, const std::vector<Span>& test) {
    return static_cast<double>(leaking_test_count(train, test)) / static_cast<double>(test.size());
}

inline std::vector<std::size_t> window_starts(std::size_t n, std::size_t size, std::size_t step) {
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + size <= n; s += step) starts.push_back(s);
    return starts;
}

// Transition counts keyed by (from, to) sensor name.
inline std::map<std::pair<std::string, std::string>, std::size_t> transition_counts(
    const std::vector<std::string>& sequence) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (std::size_t i = 1; i < sequence.size(); ++i) ++counts[{sequence[i - 1], sequence[i]}];
    return counts;
}

inline double entropy_bits(const std::vector<std::string>& ids) {
    std::map<std::string, double> freq;
    for (const auto& id : ids) freq[id] += 1.0;
    double h = 0.0;
    for (const auto& [id, c] : freq) {
        const double p = c / static_cast<double>(ids.size());
        h -= p * std::log2(p);
    }
    return h;
}

// Pearson via raw sums, the textbook single-pass form.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        syy += static_cast<long double>(y[i]) * y[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double vx = n * sxx - sx * sx;
    const long double vy = n * syy - sy * sy;
    if (vx <= 1e-18L * n * sxx || vy <= 1e-18L * n * syy) return 0.0;
    return static_cast<double>((n * sxy - sx * sy) / std::sqrt(vx * vy));
}

// Metrics straight from label vectors, no matrix.
inline double balanced_accuracy(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
    std::map<std::size_t, std::pair<double, double>> per;  // class -> (hits, support)
    for (std::size_t i = 0; i < truth.size(); ++i) {
        per[truth[i]].second += 1;
        if (truth[i] == pred[i]) per[truth[i]].first += 1;
    }
    double sum = 0;
    for (const auto& [c, hs] : per) sum += hs.first / hs.second;
    return sum / static_cast<double>(per.size());
}

inline double weighted_f1(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
    std::set<std::size_t> classes(truth.begin(), truth.end());
    classes.insert(pred.begin(), pred.end());
    double total = 0;
    for (std::size_t c : classes) {
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == c && pred[i] == c) tp += 1;
            if (truth[i] != c && pred[i] == c) fp += 1;
            if (truth[i] == c && pred[i] != c) fn += 1;
        }
        const double f1 = tp == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
        total += (tp + fn) * f1;
    }
    return total / static_cast<double>(truth.size());
}

}  // namespace oracle
