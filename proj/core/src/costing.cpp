#include "queenscan/costing.hpp"

#include <array>
#include <stdexcept>

namespace queenscan {

Tally tally(const SessionReport& report) {
    Tally totals;
    for (const FrameRecord& row : report.rows) {
        totals.comparisons += row.outcome.comparisons;
        totals.updates += row.outcome.updates;
        if (row.outcome.alarmed()) {
            ++totals.frames_transmitted;
        }
        totals.bytes_transmitted += row.bytes_transmitted;
    }
    return totals;
}

double estimate_energy(const Tally& counts, const EnergyCoefficients& coefficients) {
    return coefficients.per_comparison * static_cast<double>(counts.comparisons) +
           coefficients.per_update * static_cast<double>(counts.updates) +
           coefficients.per_tx_byte * counts.bytes_transmitted;
}

CostReport cost_report(const Tally& counts, const EnergyCoefficients& coefficients) {
    return CostReport{counts, estimate_energy(counts, coefficients)};
}

double calibrate(std::span<const CalibrationPoint> points) {
    double cross_sum = 0.0;
    double square_sum = 0.0;
    for (const CalibrationPoint& point : points) {
        const auto count = static_cast<double>(point.comparisons);
        cross_sum += count * point.energy_mj;
        square_sum += count * count;
    }
    if (square_sum == 0.0) {
        throw DegenerateInputError("calibrate: every point has zero comparisons");
    }
    return cross_sum / square_sum;
}

double savings_factor(int grid_n, std::size_t placement_size) {
    if (grid_n < 1 || placement_size == 0) {
        throw std::invalid_argument("savings_factor: grid order and placement size must be positive");
    }
    return static_cast<double>(grid_n) * static_cast<double>(grid_n) /
           static_cast<double>(placement_size);
}

std::span<const CalibrationPoint> reference_energy_table() {
    static constexpr std::array<CalibrationPoint, 4> kTable{{
        {256, 23.19},
        {32, 2.90},
        {704, 63.78},
        {64, 5.79},
    }};
    return kTable;
}

EnergyCoefficients default_coefficients() {
    static const double per_comparison = calibrate(reference_energy_table());
    return EnergyCoefficients{per_comparison, 0.0, 0.0};
}

}  // namespace queenscan
