#pragma once

// Trajectory-coverage experiment: how often does a random straight path
// across the block grid touch at least one decimation cell? Trajectories are
// segments between two boundary cells on different edges, rasterized as
// 8-connected digital lines.

#include <cstdint>
#include <vector>

#include "queenscan/errors.hpp"
#include "queenscan/placement.hpp"

namespace queenscan {

/// Deterministic 64-bit generator (splitmix64). Self-contained so results
/// are reproducible across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Unbiased draw in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// Seed of sample `index` in the stream rooted at `master_seed`. Samples can
/// be generated in any order or in parallel without changing results.
std::uint64_t subsample_seed(std::uint64_t master_seed, std::uint64_t index);

/// A continual path across an R x C grid: consecutive cells are 8-neighbor
/// adjacent and both endpoints lie on the grid boundary.
struct Trajectory {
    int rows = 0;
    int cols = 0;
    std::vector<Cell> cells;
};

struct CoverageReport {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double rate = 0.0;  // hits / samples
    std::uint64_t seed = 0;
};

/// The cells the straight segment between the centers of a and b passes
/// through, in traversal order, both endpoints included. Steps are
/// 8-connected: one axis at a time, diagonal exactly where the segment
/// crosses a lattice corner (so corner-to-corner diagonals yield the pure
/// diagonal cell run).
std::vector<Cell> segment_cells(Cell a, Cell b);

/// Draws one trajectory: two boundary cells picked uniformly on two different
/// edges (edge order top, bottom, left, right), joined by the cell run of the
/// straight segment between their centers. Requires rows >= 2 and cols >= 2.
Trajectory gen_trajectory(SplitMix64& rng, int rows, int cols);

/// True iff the trajectory shares at least one cell with the decimation set.
/// Throws DimensionMismatchError when grids differ.
bool crosses(const Trajectory& trajectory, const GridCells& cells);

/// Generates n_samples trajectories (sample i seeded by subsample_seed(seed, i))
/// and counts how many cross the decimation set. Bit-exactly reproducible
/// from (seed, n_samples, cells).
CoverageReport coverage_experiment(std::uint64_t n_samples, const GridCells& cells,
                                   std::uint64_t seed);

}  // namespace queenscan
