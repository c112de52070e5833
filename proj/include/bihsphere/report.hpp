#pragma once

/// Check orchestration and report emission. A run executes the enabled
/// checks on the configured immersion, gathers measured invariants, gate
/// outcomes and spectral estimates, and renders a deterministic report
/// (JSON, CSV or text). Exit codes: 0 all good, 1 check failure, 2
/// configuration error, 3 numerical abort.

#include <json.hpp>

#include "bihsphere/config.hpp"

namespace bihsphere {

struct NumericalAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunResult {
    int exit_code = 0;
    nlohmann::json report;
    std::string rendered;                 // in the configured output format
    std::optional<std::string> scan_csv;  // fixed column order, LF line ends
};

RunResult run(const RunConfig& cfg);

// Renders a scan result as CSV with columns
// a, residual_normal, residual_tangent, area_II, d_area_II.
std::string scan_to_csv(const struct AreaScanResult& scan);

extern const char* kReportSchemaJson;  // JSON schema the reports satisfy

}  // namespace bihsphere
