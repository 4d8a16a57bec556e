#pragma once

#include <nlohmann/json.hpp>

#include "driftlab/detect.hpp"

namespace driftlab {

// JSON forms of detector results; keys mirror the struct field names.
void to_json(nlohmann::json& j, const KsResult& r);
void from_json(const nlohmann::json& j, KsResult& r);
void to_json(nlohmann::json& j, const MmdResult& r);
void from_json(const nlohmann::json& j, MmdResult& r);

}  // namespace driftlab
