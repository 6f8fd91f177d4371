#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gocoexist/sim_engine.hpp"

namespace gocoexist {

inline constexpr int kSchemaVersion = 1;

/// Parses a JSON run configuration. Missing keys keep their defaults; if the
/// document names a `preset`, that preset supplies the defaults. Unknown keys,
/// type mismatches and range violations raise ConfigError naming the dotted
/// key; syntax errors report line and column.
ScenarioConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Serializes every field (schema_version 1). parse_config_text(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& cfg);

/// GOCOEXIST_SEED as an unsigned 64-bit seed, if set. Throws ConfigError on junk.
std::optional<std::uint64_t> seed_from_env();

std::uint64_t parse_seed(const std::string& text, const std::string& key);

}  // namespace gocoexist
