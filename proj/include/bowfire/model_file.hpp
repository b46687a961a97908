#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bowfire/pipeline.hpp"

namespace bowfire {

/// Version written into every model file; newer versions are rejected.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const BowfireModel& model);

/// Throws FormatError for unknown versions, missing fields or tables that
/// fail the model invariants.
BowfireModel model_from_json(const nlohmann::json& j);

/// Canonical text form. Doubles use shortest round-trip spelling, so
/// serialize(parse(serialize(m))) == serialize(m) byte for byte.
std::string serialize_model(const BowfireModel& model);
BowfireModel parse_model(const std::string& text);

void save_model(const std::filesystem::path& path, const BowfireModel& model);
BowfireModel load_model(const std::filesystem::path& path);

} // namespace bowfire
