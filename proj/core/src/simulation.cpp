#include "queenscan/simulation.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace queenscan {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

enum Edge { Top = 0, Bottom = 1, Left = 2, Right = 3 };

Cell cell_on_edge(SplitMix64& rng, int edge, int rows, int cols) {
    switch (edge) {
        case Top: return Cell{0, static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)))};
        case Bottom:
            return Cell{rows - 1, static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)))};
        case Left: return Cell{static_cast<int>(rng.below(static_cast<std::uint64_t>(rows))), 0};
        default:
            return Cell{static_cast<int>(rng.below(static_cast<std::uint64_t>(rows))), cols - 1};
    }
}

}  // namespace

std::uint64_t SplitMix64::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    // Lemire's multiply-and-reject method.
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t cutoff = (0 - bound) % bound;
        while (low < cutoff) {
            product = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t subsample_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + (index + 1) * kGolden);
}

std::vector<Cell> segment_cells(Cell a, Cell b) {
    std::vector<Cell> cells;
    const long long row_span = std::abs(b.row - a.row);
    const long long col_span = std::abs(b.col - a.col);
    const int row_step = a.row < b.row ? 1 : -1;
    const int col_step = a.col < b.col ? 1 : -1;
    int row = a.row;
    int col = a.col;
    cells.reserve(static_cast<std::size_t>(row_span + col_span) + 1);
    cells.push_back(Cell{row, col});
    long long next_row_cross = 1;  // row boundary j is crossed at t = (2j-1)/(2*row_span)
    long long next_col_cross = 1;
    while (next_row_cross <= row_span || next_col_cross <= col_span) {
        if (next_col_cross > col_span) {
            row += row_step;
            ++next_row_cross;
        } else if (next_row_cross > row_span) {
            col += col_step;
            ++next_col_cross;
        } else {
            // Compare crossing parameters exactly via cross-multiplication.
            const long long col_t = (2 * next_col_cross - 1) * row_span;
            const long long row_t = (2 * next_row_cross - 1) * col_span;
            if (col_t < row_t) {
                col += col_step;
                ++next_col_cross;
            } else if (col_t > row_t) {
                row += row_step;
                ++next_row_cross;
            } else {  // exact lattice corner: step diagonally
                row += row_step;
                col += col_step;
                ++next_row_cross;
                ++next_col_cross;
            }
        }
        cells.push_back(Cell{row, col});
    }
    return cells;
}

Trajectory gen_trajectory(SplitMix64& rng, int rows, int cols) {
    if (rows < 2 || cols < 2) {
        throw std::invalid_argument("gen_trajectory: grid must be at least 2x2");
    }
    const int first_edge = static_cast<int>(rng.below(4));
    int second_edge = static_cast<int>(rng.below(3));
    if (second_edge >= first_edge) {
        ++second_edge;  // skip the first edge; remaining edges keep ascending order
    }
    const Cell start = cell_on_edge(rng, first_edge, rows, cols);
    const Cell end = cell_on_edge(rng, second_edge, rows, cols);
    return Trajectory{rows, cols, segment_cells(start, end)};
}

bool crosses(const Trajectory& trajectory, const GridCells& cells) {
    if (trajectory.rows != cells.rows || trajectory.cols != cells.cols) {
        throw DimensionMismatchError(
            "trajectory grid " + std::to_string(trajectory.rows) + "x" +
            std::to_string(trajectory.cols) + " does not match decimation grid " +
            std::to_string(cells.rows) + "x" + std::to_string(cells.cols));
    }
    std::vector<char> mask(static_cast<std::size_t>(cells.rows) * cells.cols, 0);
    for (const Cell& cell : cells.cells) {
        mask[static_cast<std::size_t>(cell.row) * cells.cols + cell.col] = 1;
    }
    for (const Cell& cell : trajectory.cells) {
        if (mask[static_cast<std::size_t>(cell.row) * cells.cols + cell.col]) {
            return true;
        }
    }
    return false;
}

CoverageReport coverage_experiment(std::uint64_t n_samples, const GridCells& cells,
                                   std::uint64_t seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("coverage_experiment: need at least one sample");
    }
    CoverageReport report;
    report.samples = n_samples;
    report.seed = seed;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        SplitMix64 rng(subsample_seed(seed, i));
        const Trajectory trajectory = gen_trajectory(rng, cells.rows, cells.cols);
        if (crosses(trajectory, cells)) {
            ++report.hits;
        }
    }
    report.rate = static_cast<double>(report.hits) / static_cast<double>(report.samples);
    return report;
}

}  // namespace queenscan
