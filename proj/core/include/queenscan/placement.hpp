#pragma once

#include <compare>
#include <span>
#include <vector>

#include "queenscan/errors.hpp"

namespace queenscan {

/// One cell on a board or block grid, 0-based (row, col).
struct Cell {
    int row = 0;
    int col = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

enum class PlacementKind { Single, Double };

/// A decimation pattern on an n x n board. A Single placement is a proper
/// n-queens solution (one queen per row, column and diagonal family); a
/// Double placement is the union of a Single placement and its mirror
/// across the vertical center line, exact duplicates dropped.
struct QueensPlacement {
    int n = 0;
    PlacementKind kind = PlacementKind::Single;
    std::vector<Cell> cells;
};

enum class AttackKind { Row, Column, MainDiagonal, AntiDiagonal };

const char* to_string(AttackKind kind);

/// A pair of cells sharing a row, column or diagonal.
struct AttackViolation {
    AttackKind kind;
    Cell a;
    Cell b;
};

/// Placement cells stretched onto a rows x cols block grid, in the order of
/// the source placement. The stretch keeps distinct rows distinct and
/// distinct columns distinct; diagonal spacing is only approximate on
/// non-square grids.
struct GridCells {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cells;
};

/// Returns the lexicographically first n-queens solution under row-ascending,
/// smallest-column-first backtracking. Deterministic for a fixed n.
/// Throws NoSolutionError for n in {2, 3}.
QueensPlacement solve_first(int n);

/// Reflects a Single placement across the vertical center line and returns
/// the union: original cells in row order, then mirrored cells in row order,
/// exact duplicates dropped (a queen on the center column mirrors onto
/// itself, possible only for odd n).
QueensPlacement mirror_double(const QueensPlacement& single);

/// Reports every pair of cells that shares a row, column or diagonal.
/// Empty result means the cells form a valid (partial) queens placement.
/// Throws OutOfBoundsError if any cell lies outside [0,n) x [0,n).
std::vector<AttackViolation> validate(std::span<const Cell> cells, int n);

/// Maps board cell (r, c) to block-grid cell (floor(r*rows/n), floor(c*cols/n)).
/// Requires rows >= n and cols >= n so the map is injective per axis;
/// throws GridTooSmallError otherwise.
GridCells map_to_grid(const QueensPlacement& placement, int rows, int cols);

}  // namespace queenscan
