#pragma once

#include "pneumodel/domain.hpp"

#include <string>
#include <vector>

namespace pneumodel {

// One `key = value` line of a config file.
struct ConfigEntry {
    int line = 0;
    std::string key;
    std::string value;
};

// Splits config text into entries. Syntax: one `key = value` per line,
// `#` starts a comment, blank lines ignored. Throws ConfigError with the
// line number on malformed lines.
std::vector<ConfigEntry> parse_config_text(const std::string& text);

// Sets a single dotted key on the config. Throws ConfigError on unknown
// keys or unparseable values. Angle keys end in _deg, pressures in _kpa;
// values are converted to the internal rad/Pa representation here.
void apply_config_entry(ModelConfig& cfg, const std::string& key, const std::string& value);

// Applies entries in order, prefixing errors with the line number.
void apply_config_entries(ModelConfig& cfg, const std::vector<ConfigEntry>& entries);

// Defaults overlaid with the file's entries, then validated.
ModelConfig load_config(const std::string& path);

// Same, from an in-memory string.
ModelConfig load_config_text(const std::string& text);

// Emits every known key with its current value, in registry order; the
// output parses back into an identical configuration.
std::string write_config(const ModelConfig& cfg);

// All known dotted keys, registry order.
std::vector<std::string> config_keys();

} // namespace pneumodel
