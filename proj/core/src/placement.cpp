#include "queenscan/placement.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace queenscan {
namespace {

// Row-by-row backtracking over column bitmasks. Candidate columns are tried
// lowest bit first, so the first complete assignment is the lexicographically
// smallest column vector.
bool place_rows(int n, std::uint64_t cols, std::uint64_t left_diag,
                std::uint64_t right_diag, std::vector<int>& out) {
    if (static_cast<int>(out.size()) == n) {
        return true;
    }
    const std::uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    std::uint64_t free = ~(cols | left_diag | right_diag) & full;
    while (free != 0) {
        const std::uint64_t bit = free & (~free + 1);  // lowest set bit
        free &= free - 1;
        out.push_back(std::countr_zero(bit));
        if (place_rows(n, cols | bit, (left_diag | bit) << 1,
                       (right_diag | bit) >> 1, out)) {
            return true;
        }
        out.pop_back();
    }
    return false;
}

}  // namespace

const char* to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::Row: return "row";
        case AttackKind::Column: return "column";
        case AttackKind::MainDiagonal: return "main diagonal";
        case AttackKind::AntiDiagonal: return "anti diagonal";
    }
    return "unknown";
}

QueensPlacement solve_first(int n) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("solve_first: board order must be in [1, 63], got " +
                                    std::to_string(n));
    }
    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(n));
    if (!place_rows(n, 0, 0, 0, cols)) {
        throw NoSolutionError("no solution for n=" + std::to_string(n));
    }
    QueensPlacement placement;
    placement.n = n;
    placement.kind = PlacementKind::Single;
    placement.cells.reserve(cols.size());
    for (int row = 0; row < n; ++row) {
        placement.cells.push_back(Cell{row, cols[static_cast<std::size_t>(row)]});
    }
    return placement;
}

QueensPlacement mirror_double(const QueensPlacement& single) {
    if (single.kind != PlacementKind::Single) {
        throw std::invalid_argument("mirror_double: input must be a Single placement");
    }
    QueensPlacement doubled;
    doubled.n = single.n;
    doubled.kind = PlacementKind::Double;
    doubled.cells = single.cells;
    for (const Cell& cell : single.cells) {
        const Cell mirrored{cell.row, single.n - 1 - cell.col};
        if (mirrored != cell) {
            doubled.cells.push_back(mirrored);
        }
    }
    return doubled;
}

std::vector<AttackViolation> validate(std::span<const Cell> cells, int n) {
    for (const Cell& cell : cells) {
        if (cell.row < 0 || cell.row >= n || cell.col < 0 || cell.col >= n) {
            throw OutOfBoundsError("cell (" + std::to_string(cell.row) + "," +
                                   std::to_string(cell.col) + ") outside board of order " +
                                   std::to_string(n));
        }
    }
    std::vector<AttackViolation> violations;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const Cell& a = cells[i];
            const Cell& b = cells[j];
            if (a.row == b.row) {
                violations.push_back({AttackKind::Row, a, b});
            }
            if (a.col == b.col) {
                violations.push_back({AttackKind::Column, a, b});
            }
            if (a.row - a.col == b.row - b.col) {
                violations.push_back({AttackKind::MainDiagonal, a, b});
            }
            if (a.row + a.col == b.row + b.col) {
                violations.push_back({AttackKind::AntiDiagonal, a, b});
            }
        }
    }
    return violations;
}

GridCells map_to_grid(const QueensPlacement& placement, int rows, int cols) {
    if (rows < placement.n || cols < placement.n) {
        throw GridTooSmallError("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " too small for placement of order " +
                                std::to_string(placement.n));
    }
    GridCells mapped;
    mapped.rows = rows;
    mapped.cols = cols;
    mapped.cells.reserve(placement.cells.size());
    const std::int64_t n = placement.n;
    for (const Cell& cell : placement.cells) {
        mapped.cells.push_back(Cell{
            static_cast<int>(cell.row * static_cast<std::int64_t>(rows) / n),
            static_cast<int>(cell.col * static_cast<std::int64_t>(cols) / n),
        });
    }
    return mapped;
}

}  // namespace queenscan
