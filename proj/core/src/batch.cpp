#include "queenscan/batch.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "text_format.hpp"

namespace queenscan {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

long long parse_integer(const std::string& key, std::string_view value, long long min_value,
                        long long max_value) {
    long long parsed = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    const auto result = std::from_chars(begin, end, parsed);
    if (result.ec != std::errc() || result.ptr != end) {
        throw RangeError(key, key + " has invalid value '" + std::string(value) + "'");
    }
    if (parsed < min_value || parsed > max_value) {
        throw RangeError(key, key + " out of range: " + std::string(value) + " (expected " +
                                  std::to_string(min_value) + ".." + std::to_string(max_value) +
                                  ")");
    }
    return parsed;
}

double parse_real(const std::string& key, std::string_view value, double min_value) {
    double parsed = 0.0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    const auto result = std::from_chars(begin, end, parsed);
    if (result.ec != std::errc() || result.ptr != end) {
        throw RangeError(key, key + " has invalid value '" + std::string(value) + "'");
    }
    if (parsed < min_value) {
        throw RangeError(key, key + " out of range: " + std::string(value) + " (expected >= " +
                                  detail::format_real(min_value) + ")");
    }
    return parsed;
}

bool parse_bool(const std::string& key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw RangeError(key, key + " has invalid value '" + std::string(value) +
                              "' (expected true/false/1/0)");
}

ZeroDiffPolicy parse_policy(const std::string& key, std::string_view value) {
    if (value == "hold") return ZeroDiffPolicy::Hold;
    if (value == "literal_decrement") return ZeroDiffPolicy::LiteralDecrement;
    throw RangeError(key, key + " has invalid value '" + std::string(value) +
                              "' (expected hold or literal_decrement)");
}

void apply_config_line(RunConfig& config, const std::string& key, std::string_view value) {
    if (key == "block_size") {
        config.block_size = static_cast<int>(parse_integer(key, value, 1, 1 << 16));
    } else if (key == "threshold") {
        config.threshold = static_cast<int>(parse_integer(key, value, 0, 255));
    } else if (key == "queens_n") {
        config.queens_n = static_cast<int>(parse_integer(key, value, 1, 63));
    } else if (key == "double") {
        config.double_placement = parse_bool(key, value);
    } else if (key == "hybrid_k") {
        if (value == "none") {
            config.hybrid_k.reset();
        } else {
            config.hybrid_k = static_cast<int>(parse_integer(key, value, 1, 1 << 20));
        }
    } else if (key == "zero_diff_policy") {
        config.zero_diff_policy = parse_policy(key, value);
    } else if (key == "tx_ratio") {
        config.tx_ratio = parse_real(key, value, 0.0);
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(
            parse_integer(key, value, 0, std::numeric_limits<long long>::max()));
    } else if (key == "sink_dir") {
        config.sink_dir = std::string(value);
    } else if (key == "report_csv") {
        config.report_csv = std::string(value);
    } else if (key == "report_json") {
        config.report_json = std::string(value);
    } else {
        throw UnknownKeyError(key, "unknown config key '" + key + "'");
    }
}

void parse_config_text(RunConfig& config, std::string_view text) {
    std::size_t line_start = 0;
    int line_number = 0;
    while (line_start <= text.size()) {
        ++line_number;
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto equals = line.find('=');
        if (equals == std::string_view::npos) {
            throw RangeError("", "config line " + std::to_string(line_number) +
                                     " is not of the form key = value");
        }
        const std::string key{trim(line.substr(0, equals))};
        const std::string_view value = trim(line.substr(equals + 1));
        apply_config_line(config, key, value);
    }
}

void validate_config(const RunConfig& config) {
    if (!config.threshold) {
        throw MissingRequiredError("threshold", "missing required config key 'threshold'");
    }
    if (*config.threshold < 0 || *config.threshold > 255) {
        throw RangeError("threshold", "threshold out of range: " +
                                          std::to_string(*config.threshold) +
                                          " (expected 0..255)");
    }
    if (config.block_size < 1) {
        throw RangeError("block_size", "block_size must be >= 1");
    }
    if (config.queens_n && *config.queens_n < 1) {
        throw RangeError("queens_n", "queens_n must be >= 1");
    }
    if (config.hybrid_k && *config.hybrid_k < 1) {
        throw RangeError("hybrid_k", "hybrid_k must be >= 1");
    }
    if (config.tx_ratio < 0.0) {
        throw RangeError("tx_ratio", "tx_ratio must be >= 0");
    }
}

ordered_json config_echo(const RunConfig& config, int queens_n_used) {
    ordered_json echo;
    echo["block_size"] = config.block_size;
    echo["threshold"] = config.threshold ? ordered_json(*config.threshold) : ordered_json();
    echo["queens_n"] = queens_n_used;
    echo["double"] = config.double_placement;
    echo["hybrid_k"] = config.hybrid_k ? ordered_json(*config.hybrid_k) : ordered_json();
    echo["zero_diff_policy"] = to_string(config.zero_diff_policy);
    echo["tx_ratio"] = config.tx_ratio;
    echo["seed"] = config.seed;
    echo["sink_dir"] = config.sink_dir;
    echo["report_csv"] = config.report_csv;
    echo["report_json"] = config.report_json;
    return echo;
}

/// Lazily decodes the sorted frame files; errors name the offending file.
class DirectoryFrameSource : public FrameSource {
public:
    explicit DirectoryFrameSource(std::vector<std::filesystem::path> files)
        : files_(std::move(files)) {}

    std::optional<Frame> next() override {
        if (next_ >= files_.size()) {
            return std::nullopt;
        }
        const std::filesystem::path& file = files_[next_++];
        try {
            return load_pgm(file);
        } catch (const Error& e) {
            throw FrameLoadError(file.filename().string() + ": " + e.what());
        }
    }

    std::string label() const override {
        if (next_ == 0 || next_ > files_.size()) {
            return "<no frame>";
        }
        return files_[next_ - 1].filename().string();
    }

private:
    std::vector<std::filesystem::path> files_;
    std::size_t next_ = 0;
};

std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("frame directory " + dir.string() + " does not exist");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        return a.filename().string() < b.filename().string();
    });
    if (files.empty()) {
        throw EmptySourceError("no .pgm frames in " + dir.string());
    }
    return files;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << text;
    out.flush();
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

const char* to_string(ZeroDiffPolicy policy) {
    return policy == ZeroDiffPolicy::Hold ? "hold" : "literal_decrement";
}

RunConfig parse_config(std::string_view text) {
    return resolve_config(text, ConfigOverrides{});
}

RunConfig resolve_config(std::optional<std::string_view> file_text,
                         const ConfigOverrides& overrides) {
    RunConfig config;
    if (file_text) {
        parse_config_text(config, *file_text);
    }
    if (overrides.block_size) config.block_size = *overrides.block_size;
    if (overrides.threshold) config.threshold = *overrides.threshold;
    if (overrides.queens_n) config.queens_n = *overrides.queens_n;
    if (overrides.double_placement) config.double_placement = *overrides.double_placement;
    if (overrides.hybrid_k) config.hybrid_k = *overrides.hybrid_k;
    if (overrides.zero_diff_policy) config.zero_diff_policy = *overrides.zero_diff_policy;
    if (overrides.tx_ratio) config.tx_ratio = *overrides.tx_ratio;
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.sink_dir) config.sink_dir = *overrides.sink_dir;
    if (overrides.report_csv) config.report_csv = *overrides.report_csv;
    if (overrides.report_json) config.report_json = *overrides.report_json;
    validate_config(config);
    return config;
}

DetectResult run_detect(const std::filesystem::path& frame_dir, const RunConfig& config) {
    validate_config(config);
    DetectResult result;
    result.frames = list_frame_files(frame_dir);

    const Frame first = [&] {
        try {
            return load_pgm(result.frames.front());
        } catch (const Error& e) {
            throw FrameLoadError(result.frames.front().filename().string() + ": " + e.what());
        }
    }();
    const BlockGrid first_grid = to_block_grid(first, config.block_size);
    result.grid_rows = first_grid.rows;
    result.grid_cols = first_grid.cols;

    const int queens_n = config.queens_n.value_or(std::min(first_grid.rows, first_grid.cols));
    if (queens_n > std::min(first_grid.rows, first_grid.cols)) {
        throw RangeError("queens_n",
                         "queens_n " + std::to_string(queens_n) + " exceeds block grid " +
                             std::to_string(first_grid.rows) + "x" +
                             std::to_string(first_grid.cols));
    }
    result.queens_n_used = queens_n;
    QueensPlacement placement = [&] {
        try {
            return solve_first(queens_n);
        } catch (const NoSolutionError&) {
            throw RangeError("queens_n",
                             "queens_n " + std::to_string(queens_n) + " has no placement (" +
                                 (config.queens_n ? "configured" : "defaulted from the " +
                                                                       std::to_string(first_grid.rows) +
                                                                       "x" +
                                                                       std::to_string(first_grid.cols) +
                                                                       " block grid") +
                                 "); use a block grid of at least 4 blocks per side");
        }
    }();
    if (config.double_placement) {
        placement = mirror_double(placement);
    }
    const GridCells cells = map_to_grid(placement, first_grid.rows, first_grid.cols);

    PipelineOptions options;
    options.block_size = config.block_size;
    options.detector.threshold = *config.threshold;
    options.detector.zero_diff_policy = config.zero_diff_policy;
    options.schedule.period = config.hybrid_k;
    options.tx_ratio = config.tx_ratio;

    DirectorySink sink{config.sink_dir};
    DirectoryFrameSource source{result.frames};
    result.session = run_pipeline(source, cells, options, sink);
    result.totals = tally(result.session);

    const CostReport costs = cost_report(result.totals, default_coefficients());
    result.energy_mj = costs.energy_mj;
    result.summary_json = report_summary(result.session, costs, config, queens_n);

    std::ostringstream csv;
    write_report_csv(result.session, csv);
    write_text_file(config.report_csv, csv.str());
    write_text_file(config.report_json, result.summary_json);
    return result;
}

std::string report_summary(const SessionReport& session, const CostReport& costs,
                           const RunConfig& config, int queens_n_used) {
    ordered_json summary;
    summary["frames"] = session.frames_seen;
    summary["alarms"] = costs.counts.frames_transmitted;
    summary["comparisons"] = costs.counts.comparisons;
    summary["updates"] = costs.counts.updates;
    summary["bytes_transmitted"] = costs.counts.bytes_transmitted;
    summary["energy_mj"] = costs.energy_mj;
    summary["config"] = config_echo(config, queens_n_used);
    return summary.dump(2) + "\n";
}

std::string coverage_json(const CoverageReport& report, const QueensPlacement& placement,
                          const GridCells& cells) {
    ordered_json body;
    body["samples"] = report.samples;
    body["hits"] = report.hits;
    body["rate"] = report.rate;
    body["seed"] = report.seed;
    ordered_json placement_body;
    placement_body["n"] = placement.n;
    placement_body["kind"] = placement.kind == PlacementKind::Double ? "double" : "single";
    placement_body["grid"] = {{"rows", cells.rows}, {"cols", cells.cols}};
    ordered_json cell_list = ordered_json::array();
    for (const Cell& cell : cells.cells) {
        cell_list.push_back({cell.row, cell.col});
    }
    placement_body["cells"] = std::move(cell_list);
    body["placement"] = std::move(placement_body);
    return body.dump(2) + "\n";
}

std::string cost_report_json(const CostReport& report, const EnergyCoefficients& coefficients) {
    ordered_json body;
    body["comparisons"] = report.counts.comparisons;
    body["updates"] = report.counts.updates;
    body["frames_transmitted"] = report.counts.frames_transmitted;
    body["bytes_transmitted"] = report.counts.bytes_transmitted;
    body["energy_mj"] = report.energy_mj;
    body["coefficients"] = {{"per_comparison", coefficients.per_comparison},
                            {"per_update", coefficients.per_update},
                            {"per_tx_byte", coefficients.per_tx_byte}};
    return body.dump(2) + "\n";
}

Tally read_report_csv(std::istream& in) {
    Tally totals;
    std::string line;
    bool header = true;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw Error("report row " + std::to_string(line_number) + " has " +
                        std::to_string(fields.size()) + " fields, expected 9");
        }
        try {
            if (fields[2] == "1") {
                ++totals.frames_transmitted;
            }
            totals.comparisons += std::stoull(fields[6]);
            totals.updates += std::stoull(fields[7]);
            totals.bytes_transmitted += std::stod(fields[8]);
        } catch (const std::exception&) {
            throw Error("report row " + std::to_string(line_number) + " is malformed: " + line);
        }
    }
    return totals;
}

EnergyCoefficients parse_coefficients(std::string_view text) {
    EnergyCoefficients coefficients = default_coefficients();
    std::size_t line_start = 0;
    int line_number = 0;
    while (line_start <= text.size()) {
        ++line_number;
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto equals = line.find('=');
        if (equals == std::string_view::npos) {
            throw RangeError("", "coefficients line " + std::to_string(line_number) +
                                     " is not of the form key = value");
        }
        const std::string key{trim(line.substr(0, equals))};
        const std::string_view value = trim(line.substr(equals + 1));
        if (key == "per_comparison") {
            coefficients.per_comparison = parse_real(key, value, 0.0);
        } else if (key == "per_update") {
            coefficients.per_update = parse_real(key, value, 0.0);
        } else if (key == "per_tx_byte") {
            coefficients.per_tx_byte = parse_real(key, value, 0.0);
        } else {
            throw UnknownKeyError(key, "unknown coefficient key '" + key + "'");
        }
    }
    return coefficients;
}

}  // namespace queenscan
