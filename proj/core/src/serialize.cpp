#include "harleak/serialize.hpp"

#include <cmath>
#include <limits>

#include "harleak/error.hpp"

namespace harleak {

using nlohmann::json;

nlohmann::json to_json(const FoldAssignment& a) {
    json parts = json::array();
    for (const auto& p : a.partitions) parts.push_back({{"name", p.name}, {"indices", p.indices}});
    return {{"scheme", to_string(a.scheme)}, {"seed", a.seed}, {"partitions", std::move(parts)}};
}

FoldAssignment fold_assignment_from_json(const nlohmann::json& j) {
    FoldAssignment a;
    a.scheme = parse_split_scheme(j.at("scheme").get<std::string>());
    a.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("partitions"))
        a.partitions.push_back({p.at("name").get<std::string>(), p.at("indices").get<std::vector<std::size_t>>()});
    return a;
}

nlohmann::json to_json(const SegmentationSpec& s) {
    return {{"mode", to_string(s.mode)},
            {"size", s.size},
            {"step", s.step},
            {"label_rule", to_string(s.label_rule)},
            {"group_rule", to_string(s.group_rule)}};
}

SegmentationSpec segmentation_from_json(const nlohmann::json& j) {
    SegmentationSpec s;
    s.mode = parse_segment_mode(j.value("mode", "event-count"));
    s.size = j.at("size").get<std::size_t>();
    s.step = j.at("step").get<std::size_t>();
    s.label_rule = parse_label_rule(
        j.value("label_rule", s.mode == SegmentMode::EventCount ? "last-event" : "uniform-activity"));
    s.group_rule =
        parse_group_rule(j.value("group_rule", s.mode == SegmentMode::EventCount ? "by-date" : "by-subject"));
    s.validate();
    return s;
}

nlohmann::json to_json(const SplitSpec& s) {
    json j{{"scheme", to_string(s.scheme)}, {"seed", s.seed}};
    switch (s.scheme) {
        case SplitScheme::RandomShuffle:
            j["ratios"] = s.ratios;
            break;
        case SplitScheme::StratifiedKFold:
        case SplitScheme::GroupKFold:
        case SplitScheme::StratifiedGroupKFold:
            j["k"] = s.k;
            j["pooled"] = s.pooled;
            if (!s.pooled) j["test_fold"] = s.test_fold;
            break;
        case SplitScheme::Loso:
            break;
        case SplitScheme::ExplicitHoldout:
            j["assignments"] = s.assignments;
            break;
    }
    return j;
}

SplitSpec split_spec_from_json(const nlohmann::json& j) {
    SplitSpec s;
    s.scheme = parse_split_scheme(j.at("scheme").get<std::string>());
    if (j.contains("ratios")) s.ratios = j["ratios"].get<std::vector<unsigned>>();
    s.k = j.value("k", s.k);
    s.test_fold = j.value("test_fold", s.test_fold);
    s.pooled = j.value("pooled", s.scheme == SplitScheme::Loso);
    s.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("assignments")) {
        const auto& a = j["assignments"];
        if (a.is_string()) {
            const auto preset = a.get<std::string>();
            if (preset == "pamap2")
                s.assignments = pamap2_holdout();
            else if (preset == "mhealth")
                s.assignments = mhealth_holdout();
            else
                throw_config("unknown holdout preset '" + preset + "'");
        } else {
            s.assignments = a.get<std::map<std::string, std::string>>();
        }
    }
    s.validate();
    return s;
}

nlohmann::json to_json(const ForestParams& p) {
    return {{"n_trees", p.n_trees},
            {"max_depth", p.max_depth},
            {"min_leaf", p.min_leaf},
            {"bootstrap", p.bootstrap},
            {"features_per_split", p.features_per_split}};
}

ForestParams forest_params_from_json(const nlohmann::json& j) {
    ForestParams p;
    p.n_trees = j.value("n_trees", p.n_trees);
    p.max_depth = j.value("max_depth", p.max_depth);
    p.min_leaf = j.value("min_leaf", p.min_leaf);
    p.bootstrap = j.value("bootstrap", p.bootstrap);
    p.features_per_split = j.value("features_per_split", p.features_per_split);
    p.threads = j.value("threads", p.threads);
    if (p.n_trees < 1) throw_config("classifier n_trees must be at least 1");
    return p;
}

namespace {
// JSON has no infinity; "inf" stands in for it.
double number_or_inf(const json& j) {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
        return std::numeric_limits<double>::infinity();
    return j.get<double>();
}
json inf_or_number(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}
}  // namespace

nlohmann::json to_json(const AmbientSynthConfig& c) {
    return {{"activities", c.activities},
            {"sensors", c.sensors},
            {"temperature_sensors", c.temperature_sensors},
            {"mean_duration", c.mean_duration},
            {"concentration", inf_or_number(c.concentration)},
            {"noise", c.noise},
            {"temperature_rate", c.temperature_rate},
            {"days", c.days},
            {"events_per_day", c.events_per_day},
            {"seed", c.seed}};
}

AmbientSynthConfig ambient_config_from_json(const nlohmann::json& j) {
    AmbientSynthConfig c;
    c.activities = j.value("activities", c.activities);
    c.sensors = j.value("sensors", c.sensors);
    c.temperature_sensors = j.value("temperature_sensors", c.temperature_sensors);
    c.mean_duration = j.value("mean_duration", c.mean_duration);
    if (j.contains("concentration")) c.concentration = number_or_inf(j["concentration"]);
    c.noise = j.value("noise", c.noise);
    c.temperature_rate = j.value("temperature_rate", c.temperature_rate);
    c.days = j.value("days", c.days);
    c.events_per_day = j.value("events_per_day", c.events_per_day);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

nlohmann::json to_json(const BodySynthConfig& c) {
    return {{"activities", c.activities},
            {"channels", c.channels},
            {"subjects", c.subjects},
            {"visits_per_activity", c.visits_per_activity},
            {"mean_duration", c.mean_duration},
            {"sample_rate_hz", c.sample_rate_hz},
            {"amplitude_min", c.amplitude_min},
            {"amplitude_max", c.amplitude_max},
            {"frequency_min", c.frequency_min},
            {"frequency_max", c.frequency_max},
            {"subject_offset_scale", c.subject_offset_scale},
            {"noise", c.noise},
            {"seed", c.seed}};
}

BodySynthConfig body_config_from_json(const nlohmann::json& j) {
    BodySynthConfig c;
    c.activities = j.value("activities", c.activities);
    c.channels = j.value("channels", c.channels);
    c.subjects = j.value("subjects", c.subjects);
    c.visits_per_activity = j.value("visits_per_activity", c.visits_per_activity);
    c.mean_duration = j.value("mean_duration", c.mean_duration);
    c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
    c.amplitude_min = j.value("amplitude_min", c.amplitude_min);
    c.amplitude_max = j.value("amplitude_max", c.amplitude_max);
    c.frequency_min = j.value("frequency_min", c.frequency_min);
    c.frequency_max = j.value("frequency_max", c.frequency_max);
    c.subject_offset_scale = j.value("subject_offset_scale", c.subject_offset_scale);
    c.noise = j.value("noise", c.noise);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
    json rows = json::array();
    for (ClassId t = 0; t < cm.size(); ++t) {
        json row = json::array();
        for (ClassId p = 0; p < cm.size(); ++p) row.push_back(cm.at(t, p));
        rows.push_back(std::move(row));
    }
    return {{"classes", cm.classes()}, {"counts", std::move(rows)}};
}

}  // namespace harleak
