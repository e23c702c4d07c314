#pragma once

// Queens-decimated motion detection with incremental background adaptation,
// plus the full background-subtraction baseline and the hybrid schedule that
// interleaves the two.
//
// Scan rules shared by both detectors, per probed cell:
//   s = current - background (signed block difference)
//   |s| >  threshold  -> alarm at that cell
//   s  >  0           -> background += update_step (saturating at 255)
//   s  <  0           -> background -= update_step (saturating at 0)
//   s ==  0           -> Hold: untouched; LiteralDecrement: -= update_step
//
// scan_queens visits only the decimation cells and stops at the first alarm;
// scan_full visits every cell with no early exit, so its comparison count is
// always rows * cols.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "queenscan/errors.hpp"
#include "queenscan/imaging.hpp"
#include "queenscan/placement.hpp"

namespace queenscan {

enum class ZeroDiffPolicy { Hold, LiteralDecrement };

struct DetectorConfig {
    int threshold = 0;  // strict comparison: alarm when |s| > threshold
    ZeroDiffPolicy zero_diff_policy = ZeroDiffPolicy::Hold;
    int update_step = 1;
};

/// Mutable background grid, adapted toward the current frame by every scan.
struct BackgroundModel {
    BlockGrid grid;
};

/// Copies the given grid as the initial background.
BackgroundModel init_background(const BlockGrid& grid);

struct Trigger {
    int row = 0;
    int col = 0;
    int diff = 0;  // signed current - background at the triggering cell

    friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct DetectionOutcome {
    std::optional<Trigger> trigger;
    std::uint64_t comparisons = 0;  // cells visited
    std::uint64_t updates = 0;      // background cells whose value changed

    bool alarmed() const { return trigger.has_value(); }
};

/// Visits the decimation cells in order; stops at the first cell whose
/// absolute difference exceeds the threshold (later cells are neither
/// compared nor updated). Below-threshold cells adapt the background.
DetectionOutcome scan_queens(BackgroundModel& background, const BlockGrid& current,
                             const GridCells& cells, const DetectorConfig& config);

/// Baseline: visits all rows x cols cells in row-major order with no early
/// exit. The first above-threshold cell becomes the trigger; above-threshold
/// cells are not updated, every below-threshold cell is.
DetectionOutcome scan_full(BackgroundModel& background, const BlockGrid& current,
                           const DetectorConfig& config);

/// Full-scan cadence for the hybrid approach: every `period`-th frame uses
/// scan_full, the rest use scan_queens. No period means queens-only.
struct HybridSchedule {
    std::optional<int> period;

    static HybridSchedule never() { return {}; }
    static HybridSchedule every(int k) { return {k}; }
};

enum class DetectorKind { Queens, Full };

const char* to_string(DetectorKind kind);

struct FrameRecord {
    int frame_index = 0;
    DetectorKind detector = DetectorKind::Queens;
    DetectionOutcome outcome;
    double bytes_transmitted = 0.0;  // raw frame bytes * tx_ratio when alarmed
};

struct SessionReport {
    std::vector<FrameRecord> rows;  // one per scanned frame, frame order
    int frames_seen = 0;            // includes the background-initializing frame
};

/// Pull-based ordered frame stream.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual std::optional<Frame> next() = 0;
    /// Label of the frame most recently returned, for error messages.
    virtual std::string label() const = 0;
};

class VectorFrameSource : public FrameSource {
public:
    explicit VectorFrameSource(std::vector<Frame> frames)
        : frames_(std::move(frames)) {}
    std::optional<Frame> next() override;
    std::string label() const override;

private:
    std::vector<Frame> frames_;
    std::size_t next_ = 0;
};

struct DeliveryRecord {
    int frame_index = 0;
    std::filesystem::path file;
    double bytes = 0.0;
};

/// Destination for alarmed frames.
class AlarmSink {
public:
    virtual ~AlarmSink() = default;
    virtual DeliveryRecord deliver(const Frame& frame, int frame_index,
                                   const Trigger& trigger, double bytes) = 0;
};

/// Directory-backed sink: each alarmed frame is persisted as canonical PGM
/// `frame_<index>.pgm` and one line is appended to the `alarms.csv` manifest.
class DirectorySink : public AlarmSink {
public:
    /// Creates the directory and the manifest; throws SinkUnavailableError.
    explicit DirectorySink(std::filesystem::path dir);
    DeliveryRecord deliver(const Frame& frame, int frame_index,
                           const Trigger& trigger, double bytes) override;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::ofstream manifest_;
};

/// Sink that records deliveries in memory. Test and dry-run helper.
class NullSink : public AlarmSink {
public:
    DeliveryRecord deliver(const Frame& frame, int frame_index,
                           const Trigger& trigger, double bytes) override;
    const std::vector<DeliveryRecord>& deliveries() const { return deliveries_; }

private:
    std::vector<DeliveryRecord> deliveries_;
};

struct PipelineOptions {
    int block_size = 8;
    DetectorConfig detector;
    HybridSchedule schedule;
    double tx_ratio = 1.0;  // transmitted bytes per raw frame byte
};

/// Raised when the sink fails mid-run; carries the rows finished before the
/// failed delivery.
class PipelineSinkError : public Error {
public:
    PipelineSinkError(const std::string& what, SessionReport partial)
        : Error(what), partial_(std::move(partial)) {}
    const SessionReport& partial_report() const { return partial_; }

private:
    SessionReport partial_;
};

/// Runs the detector over an ordered frame stream. Frame 0 initializes the
/// background; every later frame i is scanned with scan_full when the
/// schedule is due (i % period == 0), else scan_queens. Alarmed frames are
/// delivered to the sink unmodified. The background carries across frames
/// exactly as the scans mutate it; an alarm never resets it.
SessionReport run_pipeline(FrameSource& frames, const GridCells& queen_cells,
                           const PipelineOptions& options, AlarmSink& sink);

/// Per-frame report CSV:
/// frame_index,detector,alarmed,trigger_row,trigger_col,diff,comparisons,updates,bytes_tx
/// Trigger fields are empty on non-alarm rows.
void write_report_csv(const SessionReport& report, std::ostream& out);

}  // namespace queenscan
