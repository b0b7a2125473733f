#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "harleak/audit.hpp"
#include "harleak/forest.hpp"
#include "harleak/metrics.hpp"
#include "harleak/segment.hpp"
#include "harleak/split.hpp"
#include "harleak/synth.hpp"

namespace harleak {

enum class FeatureSet { Milan, ImuStats };

struct ExperimentConfig {
    std::variant<std::filesystem::path, AmbientSynthConfig, BodySynthConfig> dataset;
    SegmentationSpec segmentation;
    FeatureSet features = FeatureSet::Milan;
    std::vector<SplitSpec> splits;
    ForestParams classifier;
    std::filesystem::path output_dir;
    std::uint64_t seed = 42;
    nlohmann::json source;  // the document as given, for fingerprinting

    /// Applies a new seed everywhere the config carries one.
    void override_seed(std::uint64_t seed);
};

/// Relative dataset paths resolve against base_dir.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Hex FNV-1a of the canonical (sorted-key) JSON dump.
std::string config_fingerprint(const nlohmann::json& doc);

struct Metrics {
    double balanced_accuracy = 0.0;
    double weighted_f1 = 0.0;
    double accuracy = 0.0;
    std::vector<double> per_class_f1;
};

struct LeakageReport {
    LeakageCounts counts;
    std::vector<IntegrityViolation> violations;
};

struct RunReport {
    std::string config_fingerprint;
    std::string label;  // file suffix, usually the scheme name
    SplitSpec split;
    std::vector<FoldAssignment> assignments;
    std::vector<std::string> feature_names;
    std::vector<std::string> classes;
    std::size_t instance_count = 0;
    std::size_t train_count = 0;
    std::size_t test_count = 0;
    // Pooled over evaluation rounds, in round order.
    std::vector<std::size_t> test_indices;
    std::vector<ClassId> truth;
    std::vector<ClassId> predicted;
    Metrics metrics;
    ConfusionMatrix confusion{{}};
    LeakageReport leakage;
    std::map<std::string, double> timings_ms;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;  // timings included
};

struct GapReport {
    RunReport biased;
    RunReport unbiased;
    double balanced_accuracy_gap = 0.0;
    double weighted_f1_gap = 0.0;

    nlohmann::json to_json() const;
};

struct AuditReport {
    std::string config_fingerprint;
    SplitSpec split;
    SegmentationSpec segmentation;
    std::size_t window_count = 0;
    LeakageReport leakage;
    std::map<std::size_t, std::size_t> histogram;

    nlohmann::json to_json() const;
};

RunReport run(const ExperimentConfig& config);
GapReport compare(const ExperimentConfig& config);
AuditReport audit(const ExperimentConfig& config);

/// Writes report.json, confusion_<label>.csv, assignment_<label>.json and
/// predictions_<label>.csv into the config's output directory.
void write_outputs(const RunReport& report, const std::filesystem::path& dir);
void write_outputs(const GapReport& report, const std::filesystem::path& dir);
void write_outputs(const AuditReport& report, const std::filesystem::path& dir);

/// Emits a synthetic dataset (data files, locations.json, manifest.json)
/// readable by load_manifest. Returns the manifest path.
std::filesystem::path write_synthetic_dataset(const AmbientSynthConfig& config, const std::filesystem::path& dir);
std::filesystem::path write_synthetic_dataset(const BodySynthConfig& config, const std::filesystem::path& dir);

/// Human-readable rendering of any report document this module writes.
std::string render_report(const nlohmann::json& doc);

/// Rounds to 4 decimal places, the precision of every reported number.
double round4(double x);

}  // namespace harleak
