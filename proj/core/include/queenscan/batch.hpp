#pragma once

// Batch front door: run configuration, frame-directory ingestion, report
// emission. The config format is line-oriented `key = value` with `#`
// comments; CLI flags override file values.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "queenscan/costing.hpp"
#include "queenscan/detection.hpp"
#include "queenscan/errors.hpp"
#include "queenscan/simulation.hpp"

namespace queenscan {

struct RunConfig {
    int block_size = 8;
    std::optional<int> threshold;   // required, no default
    std::optional<int> queens_n;    // defaults to min(grid rows, grid cols)
    bool double_placement = true;
    std::optional<int> hybrid_k;    // no value: never run the full scan
    ZeroDiffPolicy zero_diff_policy = ZeroDiffPolicy::Hold;
    double tx_ratio = 1.0;
    std::uint64_t seed = 0;
    std::string sink_dir = "alarms";
    std::string report_csv = "report.csv";
    std::string report_json = "summary.json";
};

/// CLI-side overrides; unset fields keep the file value or the default.
struct ConfigOverrides {
    std::optional<int> block_size;
    std::optional<int> threshold;
    std::optional<int> queens_n;
    std::optional<bool> double_placement;
    std::optional<int> hybrid_k;
    std::optional<ZeroDiffPolicy> zero_diff_policy;
    std::optional<double> tx_ratio;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> sink_dir;
    std::optional<std::string> report_csv;
    std::optional<std::string> report_json;
};

/// Parses and fully validates a config file. Throws UnknownKeyError,
/// MissingRequiredError (threshold) and RangeError naming the key.
RunConfig parse_config(std::string_view text);

/// File text (optional) plus overrides, validated as one config.
RunConfig resolve_config(std::optional<std::string_view> file_text,
                         const ConfigOverrides& overrides);

const char* to_string(ZeroDiffPolicy policy);

/// Everything the detect run produced, for callers that want more than files.
struct DetectResult {
    SessionReport session;
    Tally totals;
    double energy_mj = 0.0;
    int queens_n_used = 0;
    int grid_rows = 0;
    int grid_cols = 0;
    std::string summary_json;
    std::vector<std::filesystem::path> frames;  // inputs, lexicographic order
};

/// Runs the pipeline over every `.pgm` file in frame_dir (lexicographic file
/// name order; the first frame initializes the background). Writes the
/// per-frame CSV, the JSON summary and the sink artifacts declared by the
/// config. Alarms are data, not errors.
DetectResult run_detect(const std::filesystem::path& frame_dir, const RunConfig& config);

/// Stable-key-order JSON: totals, energy and a config echo.
std::string report_summary(const SessionReport& session, const CostReport& costs,
                           const RunConfig& config, int queens_n_used);

/// JSON body of coverage.json for the simulate subcommand.
std::string coverage_json(const CoverageReport& report, const QueensPlacement& placement,
                          const GridCells& cells);

/// JSON body printed by the energy subcommand.
std::string cost_report_json(const CostReport& report, const EnergyCoefficients& coefficients);

/// Rebuilds a Tally from a per-frame report CSV produced by run_detect.
Tally read_report_csv(std::istream& in);

/// Coefficients file: `key = value` lines with keys per_comparison,
/// per_update, per_tx_byte; unset keys keep the defaults.
EnergyCoefficients parse_coefficients(std::string_view text);

}  // namespace queenscan
