#pragma once

#include <string>

#include <json.hpp>

#include "affinity/gbdt.hpp"

namespace affinity {

inline constexpr const char* kModelVersion = "affinity.gbdt/1";

// Versioned JSON model format:
//   {version, base_score, learning_rate, feature_names, bins: {thresholds},
//    trees: [{nodes: [...]}, ...]}
// Numbers round-trip exactly (shortest-representation serialization). Extra
// top-level keys are preserved by save/load wrappers that take a json object,
// so callers can attach pipeline metadata next to the model.
nlohmann::ordered_json model_to_json(const Ensemble& model);
Ensemble model_from_json(const nlohmann::ordered_json& j);

void save_model(const Ensemble& model, const std::string& path);
Ensemble load_model(const std::string& path);

// File-level wrappers used by callers that bundle extra sections with the
// model document.
void save_model_document(const nlohmann::ordered_json& document, const std::string& path);
nlohmann::ordered_json load_model_document(const std::string& path);

}  // namespace affinity
