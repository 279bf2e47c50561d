#pragma once

// JSON run configuration for `censtail simulate` (schema_version 1, see
// docs/run-config.schema.json).  Unknown keys are rejected.

#include <filesystem>
#include <string_view>

#include "censtail/montecarlo.hpp"

namespace censtail {

inline constexpr int kRunConfigSchemaVersion = 1;

/// Parses a JSON document; throws ConfigError naming the offending key.
McConfig parse_run_config(std::string_view json_text);
McConfig load_run_config(const std::filesystem::path& file);

}  // namespace censtail
