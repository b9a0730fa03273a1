#pragma once

// Run configuration shared by the CLI and the verification suites. Settings
// come from a flat "key = value" file and are overridden by command-line
// flags.

#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include "green_teich/disc_functional.hpp"
#include "green_teich/extremality.hpp"
#include "green_teich/invariant_metrics.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

enum class OutputFormat { json, csv };

struct RunConfig {
    std::uint64_t seed = 0;
    int threads = 1;
    OutputFormat format = OutputFormat::json;
    /// Named tolerances; every value is > 0.
    std::map<std::string, double> tolerances;
    SearchConfig search;
    QuadratureConfig quad;
    LimitConfig limit;

    RunConfig();

    /// Throws ConfigError for unknown tolerance names.
    double tol(const std::string& name) const;
    /// Applies one setting. Tolerances use the key "tol.<name>".
    /// Throws ConfigError for unknown keys and malformed or out-of-range values.
    void set(const std::string& key, const std::string& value);
    /// Pushes seed and thread count into the nested configs.
    void propagate();

    Json echo() const;
};

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError with
/// the line number on malformed lines.
std::map<std::string, std::string> parse_key_values(std::istream& in, const std::string& source);

/// Loads a config file into cfg. Throws ConfigError when the file is unreadable.
void load_config_file(RunConfig& cfg, const std::string& path);

} // namespace gt
