// queenscan - batch CLI for decimated moving-object detection.
//
// Subcommands:
//   queens    print an n-queens decimation pattern
//   detect    run the detector over a directory of PGM frames
//   simulate  trajectory-coverage experiment for a placement
//   energy    turn a per-frame report CSV into an energy estimate

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "queenscan/batch.hpp"
#include "queenscan/costing.hpp"
#include "queenscan/detection.hpp"
#include "queenscan/placement.hpp"
#include "queenscan/simulation.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw queenscan::IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool parse_grid_spec(const std::string& spec, int& rows, int& cols) {
    const auto x = spec.find('x');
    if (x == std::string::npos) {
        return false;
    }
    try {
        std::size_t used = 0;
        rows = std::stoi(spec.substr(0, x), &used);
        if (used != x) return false;
        cols = std::stoi(spec.substr(x + 1), &used);
        if (used != spec.size() - x - 1) return false;
    } catch (const std::exception&) {
        return false;
    }
    return rows >= 1 && cols >= 1;
}

int run_queens(int n, bool doubled) {
    try {
        queenscan::QueensPlacement placement = queenscan::solve_first(n);
        if (doubled) {
            placement = queenscan::mirror_double(placement);
        }
        for (const queenscan::Cell& cell : placement.cells) {
            std::cout << cell.row << ',' << cell.col << '\n';
        }
        return 0;
    } catch (const queenscan::NoSolutionError&) {
        std::cerr << "no solution for n=" << n << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

int run_detect_command(const std::string& frame_dir,
                       const std::optional<std::string>& config_file,
                       const queenscan::ConfigOverrides& overrides) {
    try {
        std::optional<std::string> file_text;
        if (config_file) {
            file_text = read_file(*config_file);
        }
        const queenscan::RunConfig config = queenscan::resolve_config(
            file_text ? std::optional<std::string_view>(*file_text) : std::nullopt, overrides);
        const queenscan::DetectResult result = queenscan::run_detect(frame_dir, config);
        std::cout << "frames=" << result.session.frames_seen
                  << " alarms=" << result.totals.frames_transmitted
                  << " comparisons=" << result.totals.comparisons
                  << " energy_mj=" << result.energy_mj << '\n'
                  << "report: " << config.report_csv << ", summary: " << config.report_json
                  << ", sink: " << config.sink_dir << '\n';
        return 0;
    } catch (const queenscan::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const queenscan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
}

int run_simulate(const std::string& grid_spec, std::optional<int> n, bool doubled,
                 std::uint64_t samples, std::uint64_t seed, const std::string& out_path) {
    int rows = 0;
    int cols = 0;
    if (!parse_grid_spec(grid_spec, rows, cols)) {
        std::cerr << "config error: --grid expects RxC, got '" << grid_spec << "'\n";
        return kExitConfigError;
    }
    try {
        const int order = n.value_or(std::min(rows, cols));
        queenscan::QueensPlacement placement = queenscan::solve_first(order);
        if (doubled) {
            placement = queenscan::mirror_double(placement);
        }
        const queenscan::GridCells cells = queenscan::map_to_grid(placement, rows, cols);
        const queenscan::CoverageReport report =
            queenscan::coverage_experiment(samples, cells, seed);
        std::ofstream out(out_path, std::ios::trunc | std::ios::binary);
        out << queenscan::coverage_json(report, placement, cells);
        out.flush();
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kExitDataError;
        }
        std::cout << "coverage: " << report.hits << '/' << report.samples << " = "
                  << report.rate << " (seed " << report.seed << ", "
                  << (doubled ? "double" : "single") << " n=" << order << " on " << rows << 'x'
                  << cols << ") -> " << out_path << '\n';
        return 0;
    } catch (const queenscan::NoSolutionError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const queenscan::GridTooSmallError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const queenscan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
}

int run_energy(const std::string& report_path, const std::optional<std::string>& coeffs_path) {
    try {
        queenscan::EnergyCoefficients coefficients = queenscan::default_coefficients();
        if (coeffs_path) {
            coefficients = queenscan::parse_coefficients(read_file(*coeffs_path));
        }
        std::ifstream in(report_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open " << report_path << '\n';
            return kExitDataError;
        }
        const queenscan::Tally totals = queenscan::read_report_csv(in);
        std::cout << queenscan::cost_report_json(queenscan::cost_report(totals, coefficients),
                                                 coefficients);
        return 0;
    } catch (const queenscan::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const queenscan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"queenscan - decimated moving-object detection for block-averaged frames"};
    app.require_subcommand(1);

    // queens
    auto* queens = app.add_subcommand("queens", "Print an n-queens decimation pattern");
    int queens_n = 0;
    bool queens_double = false;
    queens->add_option("--n", queens_n, "Board order")->required();
    queens->add_flag("--double", queens_double, "Mirror across the vertical center line");

    // detect
    auto* detect = app.add_subcommand("detect", "Run the detector over a directory of PGM frames");
    std::string frame_dir;
    std::optional<std::string> config_file;
    detect->add_option("frames", frame_dir, "Directory of .pgm frames")->required();
    detect->add_option("--config", config_file, "key = value config file");
    queenscan::ConfigOverrides overrides;
    detect->add_option("--threshold", overrides.threshold, "Alarm threshold on block difference");
    detect->add_option("--block-size", overrides.block_size, "Pixels per block side");
    detect->add_option("--queens-n", overrides.queens_n, "Board order for the placement");
    detect->add_flag("--double,!--no-double", overrides.double_placement,
                     "Use the doubled placement");
    detect->add_option("--hybrid-k", overrides.hybrid_k, "Run the full scan every k-th frame");
    std::optional<std::string> policy_text;
    detect->add_option("--zero-diff-policy", policy_text, "hold or literal_decrement");
    detect->add_option("--tx-ratio", overrides.tx_ratio, "Transmitted bytes per raw frame byte");
    detect->add_option("--seed", overrides.seed, "Seed echoed into the summary");
    detect->add_option("--sink-dir", overrides.sink_dir, "Directory for alarmed frames");
    detect->add_option("--report-csv", overrides.report_csv, "Per-frame report path");
    detect->add_option("--report-json", overrides.report_json, "Summary JSON path");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Trajectory-coverage experiment");
    std::string grid_spec;
    std::optional<int> sim_n;
    bool sim_double = false;
    std::uint64_t samples = 0;
    std::uint64_t sim_seed = 0;
    std::string coverage_out = "coverage.json";
    simulate->add_option("--grid", grid_spec, "Block grid as RxC, e.g. 32x32")->required();
    simulate->add_option("--n", sim_n, "Board order (default min(R, C))");
    simulate->add_flag("--double", sim_double, "Use the doubled placement");
    simulate->add_option("--samples", samples, "Trajectories to draw")->required();
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--out", coverage_out, "Output JSON path");

    // energy
    auto* energy = app.add_subcommand("energy", "Energy estimate from a report CSV");
    std::string report_path;
    std::optional<std::string> coeffs_path;
    energy->add_option("--report", report_path, "Per-frame report CSV")->required();
    energy->add_option("--coeffs", coeffs_path, "key = value coefficients file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (queens->parsed()) {
            return run_queens(queens_n, queens_double);
        }
        if (detect->parsed()) {
            if (policy_text) {
                if (*policy_text == "hold") {
                    overrides.zero_diff_policy = queenscan::ZeroDiffPolicy::Hold;
                } else if (*policy_text == "literal_decrement") {
                    overrides.zero_diff_policy = queenscan::ZeroDiffPolicy::LiteralDecrement;
                } else {
                    std::cerr << "config error: zero_diff_policy has invalid value '"
                              << *policy_text << "' (expected hold or literal_decrement)\n";
                    return kExitConfigError;
                }
            }
            return run_detect_command(frame_dir, config_file, overrides);
        }
        if (simulate->parsed()) {
            return run_simulate(grid_spec, sim_n, sim_double, samples, sim_seed, coverage_out);
        }
        if (energy->parsed()) {
            return run_energy(report_path, coeffs_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
