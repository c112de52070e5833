#pragma once

/// Run configuration: a strict sectioned key-value document ([section],
/// key = value, inline tables and arrays) parsed into a validated RunConfig.
/// Unknown keys are fatal so numerical experiments cannot be silently
/// misconfigured.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bihsphere/frame.hpp"

namespace bihsphere {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line)
        : std::runtime_error("config line " + std::to_string(line) + ": " + msg), line(line) {}
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg), line(0) {}
    int line;
};

struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;
using ConfigTable = std::map<std::string, ConfigValue>;

struct ConfigValue {
    std::variant<double, bool, std::string, ConfigArray, ConfigTable> v;
    int line = 0;

    bool is_number() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_array() const { return std::holds_alternative<ConfigArray>(v); }
    bool is_table() const { return std::holds_alternative<ConfigTable>(v); }
    double number() const;
    bool boolean() const;
    const std::string& string() const;
    const ConfigArray& array() const;
    const ConfigTable& table() const;
};

// section name -> (key -> value)
using ConfigDocument = std::map<std::string, ConfigTable>;

ConfigDocument parse_config_document(const std::string& text);

// Applies "section.key=value" overrides on an already parsed document.
void apply_override(ConfigDocument& doc, const std::string& assignment);

struct DslBlock {
    std::vector<std::string> parameters;
    int ambient_dim = 0;
    std::vector<std::string> components;
    std::vector<AxisDomain> domain;
};

struct GridConfig {
    int points_per_dim = 9;
    double boundary_offset = 0.05;  // fraction of the span on non-periodic axes
};

struct ChecksConfig {
    bool bitension = true;
    bool characterization = true;
    bool parallel_identities = true;
    bool eigen_identities = true;
    bool scalar = true;
    bool spectral = true;
    bool gates = true;
    bool area_scan = false;

    bool any() const {
        return bitension || characterization || parallel_identities || eigen_identities || scalar || spectral || gates ||
               area_scan;
    }
};

enum class OutputFormat { Json, Csv, Text };

struct OutputConfig {
    OutputFormat format = OutputFormat::Json;
    std::string path;  // empty: stdout only
};

struct ScanBlock {
    std::string family;  // "hypersphere" | "clifford"
    int m = 2, m1 = 1, m2 = 2;
    double a_min = 0.3, a_max = 0.95, step = 0.01;
    int grid_points = 9;
};

struct RunConfig {
    std::optional<std::string> catalog_name;
    std::map<std::string, double> catalog_params;
    std::optional<DslBlock> dsl;
    bool compact = true;
    GridConfig grid;
    ChecksConfig checks;
    Tolerances tol;
    OutputConfig output;
    std::optional<ScanBlock> scan;
};

// Parses and validates; environment defaults (BIHSPHERE_TOLERANCE) apply
// before the document, explicit keys win.
RunConfig load_config(const std::string& text);
RunConfig build_run_config(const ConfigDocument& doc);

}  // namespace bihsphere
