#pragma once

#include <nlohmann/json.hpp>

#include "harleak/forest.hpp"
#include "harleak/metrics.hpp"
#include "harleak/model.hpp"
#include "harleak/segment.hpp"
#include "harleak/split.hpp"
#include "harleak/synth.hpp"

namespace harleak {

nlohmann::json to_json(const FoldAssignment& a);
FoldAssignment fold_assignment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SegmentationSpec& s);
SegmentationSpec segmentation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SplitSpec& s);
SplitSpec split_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ForestParams& p);
ForestParams forest_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AmbientSynthConfig& c);
AmbientSynthConfig ambient_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BodySynthConfig& c);
BodySynthConfig body_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConfusionMatrix& cm);

}  // namespace harleak
