#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "queenscan/costing.hpp"

using namespace queenscan;

namespace {

SessionReport session_with(int scans, std::uint64_t comparisons_each, int alarms,
                           double bytes_each) {
    SessionReport report;
    report.frames_seen = scans + 1;
    for (int i = 0; i < scans; ++i) {
        DetectionOutcome outcome;
        outcome.comparisons = comparisons_each;
        outcome.updates = comparisons_each / 2;
        double bytes = 0.0;
        if (i < alarms) {
            outcome.trigger = Trigger{0, 0, 100};
            bytes = bytes_each;
        }
        report.rows.push_back(FrameRecord{i + 1, DetectorKind::Queens, outcome, bytes});
    }
    return report;
}

}  // namespace

TEST_CASE("tally of an empty session is all zeros") {
    const Tally totals = tally(SessionReport{});
    CHECK(totals == Tally{});
}

TEST_CASE("tally sums the report columns") {
    const SessionReport report = session_with(10, 32, 0, 0.0);
    const Tally totals = tally(report);
    CHECK(totals.comparisons == 320);
    CHECK(totals.updates == 160);
    CHECK(totals.frames_transmitted == 0);
    CHECK(totals.bytes_transmitted == 0.0);
}

TEST_CASE("tally counts alarm transmissions at the configured ratio") {
    const double frame_bytes = 320.0 * 240.0;
    const double ratio = 0.25;
    const SessionReport report = session_with(5, 64, 2, frame_bytes * ratio);
    const Tally totals = tally(report);
    CHECK(totals.frames_transmitted == 2);
    CHECK(totals.bytes_transmitted == 2 * frame_bytes * ratio);
}

TEST_CASE("estimate_energy is the exact linear form") {
    const EnergyCoefficients coefficients{0.5, 0.25, 0.001};
    Tally counts;
    counts.comparisons = 100;
    counts.updates = 40;
    counts.bytes_transmitted = 2000.0;
    CHECK(estimate_energy(counts, coefficients) == 0.5 * 100 + 0.25 * 40 + 0.001 * 2000.0);
    CHECK(estimate_energy(Tally{}, coefficients) == 0.0);
}

TEST_CASE("energy is proportional to comparisons when only that coefficient is set") {
    const EnergyCoefficients coefficients{0.0906, 0.0, 0.0};
    for (std::uint64_t comparisons : {0ULL, 1ULL, 32ULL, 256ULL, 704ULL, 100000ULL}) {
        Tally counts;
        counts.comparisons = comparisons;
        counts.updates = 999;
        counts.bytes_transmitted = 123456.0;
        CHECK(estimate_energy(counts, coefficients) ==
              0.0906 * static_cast<double>(comparisons));
    }
}

TEST_CASE("calibrate fits the reference table to one coefficient") {
    const double slope = calibrate(reference_energy_table());
    // Independently frozen: sum(x*y) / sum(x^2) over the four table points.
    CHECK(slope == doctest::Approx(0.0905944859).epsilon(1e-6));

    // The fitted slope reproduces all four measurements within 2%.
    for (const CalibrationPoint& point : reference_energy_table()) {
        const double predicted = slope * static_cast<double>(point.comparisons);
        CHECK(std::abs(predicted - point.energy_mj) / point.energy_mj < 0.02);
    }
}

TEST_CASE("calibrate handles simple and degenerate inputs") {
    const CalibrationPoint single{100, 1.0};
    CHECK(calibrate(std::span(&single, 1)) == doctest::Approx(0.01));

    const CalibrationPoint flat[] = {{10, 0.0}, {20, 0.0}, {30, 0.0}};
    CHECK(calibrate(flat) == 0.0);

    const CalibrationPoint zero[] = {{0, 1.0}, {0, 2.0}};
    CHECK_THROWS_AS(calibrate(zero), DegenerateInputError);
    CHECK_THROWS_AS(calibrate(std::span<const CalibrationPoint>{}), DegenerateInputError);
}

TEST_CASE("calibrate minimizes the squared error against slope nudges") {
    const double slope = calibrate(reference_energy_table());
    const auto sse = [&](double s) {
        double total = 0.0;
        for (const CalibrationPoint& point : reference_energy_table()) {
            const double e = s * static_cast<double>(point.comparisons) - point.energy_mj;
            total += e * e;
        }
        return total;
    };
    CHECK(sse(slope) <= sse(slope * 1.001));
    CHECK(sse(slope) <= sse(slope * 0.999));
    CHECK(sse(slope) <= sse(slope + 1e-4));
    CHECK(sse(slope) <= sse(slope - 1e-4));
}

TEST_CASE("savings factor reproduces the published energy ratio") {
    const double factor = savings_factor(16, 32);
    CHECK(factor == 8.0);
    const double table_ratio = 23.19 / 2.9;
    CHECK(std::abs(factor - table_ratio) / table_ratio < 0.005);
}

TEST_CASE("savings factor for single and degenerate placements") {
    CHECK(savings_factor(16, 16) == 16.0);
    CHECK(savings_factor(2, 4) == 1.0);
    CHECK_THROWS_AS(savings_factor(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(savings_factor(0, 4), std::invalid_argument);
}

TEST_CASE("savings factor equals n/2 for doubled placements of every order") {
    for (int n = 1; n <= 64; ++n) {
        CHECK(savings_factor(n, static_cast<std::size_t>(2 * n)) ==
              static_cast<double>(n) / 2.0);
    }
}

TEST_CASE("default coefficients carry only the calibrated comparison cost") {
    const EnergyCoefficients coefficients = default_coefficients();
    CHECK(coefficients.per_comparison == calibrate(reference_energy_table()));
    CHECK(coefficients.per_update == 0.0);
    CHECK(coefficients.per_tx_byte == 0.0);
}
