#pragma once

#include <cstdint>
#include <span>

#include "queenscan/detection.hpp"
#include "queenscan/errors.hpp"

namespace queenscan {

/// Linear energy model: mJ per block comparison, per background cell update,
/// per transmitted byte. Image capture energy is excluded.
struct EnergyCoefficients {
    double per_comparison = 0.0;
    double per_update = 0.0;
    double per_tx_byte = 0.0;
};

/// Exact operation counts summed over a session.
struct Tally {
    std::uint64_t comparisons = 0;
    std::uint64_t updates = 0;
    std::uint64_t frames_transmitted = 0;
    double bytes_transmitted = 0.0;

    friend bool operator==(const Tally&, const Tally&) = default;
};

struct CostReport {
    Tally counts;
    double energy_mj = 0.0;
};

struct CalibrationPoint {
    std::uint64_t comparisons = 0;
    double energy_mj = 0.0;
};

/// Column sums of a session report.
Tally tally(const SessionReport& report);

/// energy = per_comparison * comparisons + per_update * updates
///        + per_tx_byte * bytes, exactly.
double estimate_energy(const Tally& counts, const EnergyCoefficients& coefficients);

CostReport cost_report(const Tally& counts, const EnergyCoefficients& coefficients);

/// Least-squares slope through the origin of energy over comparison count.
/// Throws DegenerateInputError when every point has zero comparisons.
double calibrate(std::span<const CalibrationPoint> points);

/// Full-scan to decimated-scan comparison ratio on a non-alarming square
/// n x n grid: n^2 / placement_size. Equals n/2 for a double placement of
/// 2n cells.
double savings_factor(int grid_n, std::size_t placement_size);

/// Per-image energy measured on a simulated 8-bit sensor mote: full scans of
/// 256 and 704 blocks (128x128 and 176x255 inputs, 8x8 blocks) against
/// decimated scans of 32 and 64 cells.
std::span<const CalibrationPoint> reference_energy_table();

/// per_comparison calibrated against reference_energy_table(); update and
/// transmission coefficients zero.
EnergyCoefficients default_coefficients();

}  // namespace queenscan
