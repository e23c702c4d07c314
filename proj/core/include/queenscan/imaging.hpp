#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "queenscan/errors.hpp"

namespace queenscan {

/// A grayscale frame: row-major 8-bit luma samples.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> luma;

    std::size_t byte_size() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::uint8_t at(int row, int col) const {
        return luma[static_cast<std::size_t>(row) * width + col];
    }

    friend bool operator==(const Frame&, const Frame&) = default;
};

/// A frame reduced to block averages: one 8-bit value per block_size x
/// block_size pixel block, row-major. Both detectors operate on this.
struct BlockGrid {
    int rows = 0;
    int cols = 0;
    int block_size = 1;
    std::vector<std::uint8_t> values;

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * cols + col;
    }
    std::uint8_t at(int row, int col) const { return values[index(row, col)]; }

    friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Parses a Netpbm grayscale image, binary `P5` or ASCII `P2`, maxval <= 255.
/// `#` comments are tolerated between header tokens and between P2 samples.
/// Throws BadMagicError, MaxvalUnsupportedError, TruncatedError, or
/// PgmFormatError for other malformed input.
Frame decode_pgm(std::span<const std::uint8_t> bytes);

/// Canonical writer: binary `P5`, maxval 255, single-space header.
/// decode_pgm(encode_pgm(f)) == f for every frame.
std::vector<std::uint8_t> encode_pgm(const Frame& frame);

Frame load_pgm(const std::filesystem::path& path);
void save_pgm(const Frame& frame, const std::filesystem::path& path);

/// Reduces a frame to its block grid: each value is the floor of the mean of
/// the block_size^2 pixels in that block. Pixels in partial edge blocks are
/// discarded. Throws FrameTooSmallError when no full block fits.
BlockGrid to_block_grid(const Frame& frame, int block_size);

}  // namespace queenscan
