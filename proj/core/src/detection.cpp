#include "queenscan/detection.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "text_format.hpp"

namespace queenscan {
namespace {

void require_same_dims(const BlockGrid& background, const BlockGrid& current) {
    if (background.rows != current.rows || background.cols != current.cols) {
        throw DimensionMismatchError(
            "grid dimensions differ: background " + std::to_string(background.rows) + "x" +
            std::to_string(background.cols) + ", current " + std::to_string(current.rows) +
            "x" + std::to_string(current.cols));
    }
}

// Applies the adaptation rule to one background cell; returns 1 if the
// stored value changed.
std::uint64_t adapt_cell(std::uint8_t& value, int diff, const DetectorConfig& config) {
    int updated = value;
    if (diff > 0) {
        updated = std::min(255, value + config.update_step);
    } else if (diff < 0) {
        updated = std::max(0, value - config.update_step);
    } else if (config.zero_diff_policy == ZeroDiffPolicy::LiteralDecrement) {
        updated = std::max(0, value - config.update_step);
    }
    if (updated == value) {
        return 0;
    }
    value = static_cast<std::uint8_t>(updated);
    return 1;
}

std::string frame_file_name(int frame_index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04d.pgm", frame_index);
    return buf;
}

}  // namespace

const char* to_string(DetectorKind kind) {
    return kind == DetectorKind::Queens ? "queens" : "full";
}

BackgroundModel init_background(const BlockGrid& grid) {
    return BackgroundModel{grid};
}

DetectionOutcome scan_queens(BackgroundModel& background, const BlockGrid& current,
                             const GridCells& cells, const DetectorConfig& config) {
    BlockGrid& grid = background.grid;
    require_same_dims(grid, current);
    if (cells.rows != grid.rows || cells.cols != grid.cols) {
        throw DimensionMismatchError(
            "decimation cells declared for " + std::to_string(cells.rows) + "x" +
            std::to_string(cells.cols) + " grid, scanning " + std::to_string(grid.rows) +
            "x" + std::to_string(grid.cols));
    }
    DetectionOutcome outcome;
    for (const Cell& cell : cells.cells) {
        if (cell.row < 0 || cell.row >= grid.rows || cell.col < 0 || cell.col >= grid.cols) {
            throw OutOfBoundsError("decimation cell (" + std::to_string(cell.row) + "," +
                                   std::to_string(cell.col) + ") outside grid");
        }
        const std::size_t i = grid.index(cell.row, cell.col);
        const int diff = static_cast<int>(current.values[i]) - static_cast<int>(grid.values[i]);
        ++outcome.comparisons;
        if (std::abs(diff) > config.threshold) {
            outcome.trigger = Trigger{cell.row, cell.col, diff};
            break;  // later cells are neither compared nor updated
        }
        outcome.updates += adapt_cell(grid.values[i], diff, config);
    }
    return outcome;
}

DetectionOutcome scan_full(BackgroundModel& background, const BlockGrid& current,
                           const DetectorConfig& config) {
    BlockGrid& grid = background.grid;
    require_same_dims(grid, current);
    DetectionOutcome outcome;
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.cols; ++col) {
            const std::size_t i = grid.index(row, col);
            const int diff =
                static_cast<int>(current.values[i]) - static_cast<int>(grid.values[i]);
            ++outcome.comparisons;
            if (std::abs(diff) > config.threshold) {
                if (!outcome.trigger) {
                    outcome.trigger = Trigger{row, col, diff};
                }
            } else {
                outcome.updates += adapt_cell(grid.values[i], diff, config);
            }
        }
    }
    return outcome;
}

std::optional<Frame> VectorFrameSource::next() {
    if (next_ >= frames_.size()) {
        return std::nullopt;
    }
    return frames_[next_++];
}

std::string VectorFrameSource::label() const {
    return "frame " + std::to_string(next_ == 0 ? 0 : next_ - 1);
}

DirectorySink::DirectorySink(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
        throw SinkUnavailableError("cannot create sink directory " + dir_.string() +
                                   (ec ? ": " + ec.message() : std::string()));
    }
    const std::filesystem::path manifest_path = dir_ / "alarms.csv";
    manifest_.open(manifest_path, std::ios::trunc);
    manifest_ << "frame_index,trigger_row,trigger_col,diff,bytes\n";
    manifest_.flush();
    if (!manifest_) {
        throw SinkUnavailableError("cannot write sink manifest " + manifest_path.string());
    }
}

DeliveryRecord DirectorySink::deliver(const Frame& frame, int frame_index,
                                      const Trigger& trigger, double bytes) {
    const std::filesystem::path file = dir_ / frame_file_name(frame_index);
    try {
        save_pgm(frame, file);
    } catch (const IoError& e) {
        throw SinkUnavailableError(e.what());
    }
    manifest_ << frame_index << ',' << trigger.row << ',' << trigger.col << ','
              << trigger.diff << ',' << detail::format_real(bytes) << '\n';
    manifest_.flush();
    if (!manifest_) {
        throw SinkUnavailableError("cannot append to sink manifest in " + dir_.string());
    }
    return DeliveryRecord{frame_index, file, bytes};
}

DeliveryRecord NullSink::deliver(const Frame&, int frame_index, const Trigger&,
                                 double bytes) {
    deliveries_.push_back(DeliveryRecord{frame_index, {}, bytes});
    return deliveries_.back();
}

SessionReport run_pipeline(FrameSource& frames, const GridCells& queen_cells,
                           const PipelineOptions& options, AlarmSink& sink) {
    if (options.schedule.period && *options.schedule.period < 1) {
        throw std::invalid_argument("hybrid schedule period must be >= 1");
    }
    std::optional<Frame> first = frames.next();
    if (!first) {
        throw EmptySourceError("frame source is empty");
    }
    const int width = first->width;
    const int height = first->height;
    BackgroundModel background = init_background(to_block_grid(*first, options.block_size));

    SessionReport report;
    report.frames_seen = 1;
    int frame_index = 1;
    while (std::optional<Frame> frame = frames.next()) {
        if (frame->width != width || frame->height != height) {
            throw DimensionMismatchError(
                frames.label() + ": dimensions " + std::to_string(frame->width) + "x" +
                std::to_string(frame->height) + ", expected " + std::to_string(width) + "x" +
                std::to_string(height));
        }
        const BlockGrid current = to_block_grid(*frame, options.block_size);
        const bool full_scan_due =
            options.schedule.period && frame_index % *options.schedule.period == 0;
        const DetectionOutcome outcome =
            full_scan_due ? scan_full(background, current, options.detector)
                          : scan_queens(background, current, queen_cells, options.detector);

        double bytes = 0.0;
        if (outcome.alarmed()) {
            bytes = static_cast<double>(frame->byte_size()) * options.tx_ratio;
            try {
                sink.deliver(*frame, frame_index, *outcome.trigger, bytes);
            } catch (const SinkUnavailableError& e) {
                throw PipelineSinkError(e.what(), std::move(report));
            }
        }
        report.rows.push_back(FrameRecord{
            frame_index, full_scan_due ? DetectorKind::Full : DetectorKind::Queens, outcome,
            bytes});
        ++report.frames_seen;
        ++frame_index;
    }
    return report;
}

void write_report_csv(const SessionReport& report, std::ostream& out) {
    out << "frame_index,detector,alarmed,trigger_row,trigger_col,diff,comparisons,updates,"
           "bytes_tx\n";
    for (const FrameRecord& row : report.rows) {
        out << row.frame_index << ',' << to_string(row.detector) << ','
            << (row.outcome.alarmed() ? 1 : 0) << ',';
        if (row.outcome.trigger) {
            out << row.outcome.trigger->row << ',' << row.outcome.trigger->col << ','
                << row.outcome.trigger->diff;
        } else {
            out << ",,";
        }
        out << ',' << row.outcome.comparisons << ',' << row.outcome.updates << ','
            << detail::format_real(row.bytes_transmitted) << '\n';
    }
}

}  // namespace queenscan
