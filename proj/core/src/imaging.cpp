#include "queenscan/imaging.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace queenscan {
namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Token reader over the header (and P2 sample data). Skips whitespace and
// `#` comments, which run to end of line.
class TokenReader {
public:
    explicit TokenReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::string next_token() {
        skip_space_and_comments();
        if (pos_ >= data_.size()) {
            throw TruncatedError("unexpected end of PGM input");
        }
        std::string token;
        while (pos_ < data_.size() && !is_pgm_space(data_[pos_]) && data_[pos_] != '#') {
            token.push_back(static_cast<char>(data_[pos_++]));
        }
        return token;
    }

    int next_int(const char* what, int max_value) {
        const std::string token = next_token();
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(token, &used);
        } catch (const std::exception&) {
            throw PgmFormatError(std::string("invalid ") + what + " token '" + token + "'");
        }
        if (used != token.size() || value < 0 || value > max_value) {
            throw PgmFormatError(std::string("invalid ") + what + " token '" + token + "'");
        }
        return static_cast<int>(value);
    }

    // P5: exactly one whitespace byte separates the header from raw samples.
    void expect_single_space() {
        if (pos_ >= data_.size()) {
            throw TruncatedError("unexpected end of PGM input");
        }
        if (!is_pgm_space(data_[pos_])) {
            throw PgmFormatError("missing whitespace after maxval");
        }
        ++pos_;
    }

    std::size_t pos() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (is_pgm_space(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace

Frame decode_pgm(std::span<const std::uint8_t> bytes) {
    TokenReader reader(bytes);
    std::string magic;
    try {
        magic = reader.next_token();
    } catch (const TruncatedError&) {
        throw BadMagicError("empty PGM input");
    }
    if (magic != "P5" && magic != "P2") {
        throw BadMagicError("unsupported magic '" + magic + "' (expected P5 or P2)");
    }
    const bool binary = magic == "P5";

    const int width = reader.next_int("width", 1 << 20);
    const int height = reader.next_int("height", 1 << 20);
    if (width < 1 || height < 1) {
        throw PgmFormatError("image dimensions must be positive");
    }
    const std::string maxval_token = reader.next_token();
    long maxval = -1;
    try {
        std::size_t used = 0;
        maxval = std::stol(maxval_token, &used);
        if (used != maxval_token.size()) maxval = -1;
    } catch (const std::exception&) {
        maxval = -1;
    }
    if (maxval < 1) {
        throw PgmFormatError("invalid maxval token '" + maxval_token + "'");
    }
    if (maxval > 255) {
        throw MaxvalUnsupportedError("maxval " + std::to_string(maxval) +
                                     " unsupported (must be <= 255)");
    }

    Frame frame;
    frame.width = width;
    frame.height = height;
    const std::size_t count = frame.byte_size();
    frame.luma.reserve(count);

    if (binary) {
        reader.expect_single_space();
        if (bytes.size() - reader.pos() < count) {
            throw TruncatedError("P5 body holds " + std::to_string(bytes.size() - reader.pos()) +
                                 " samples, header promises " + std::to_string(count));
        }
        frame.luma.assign(bytes.begin() + static_cast<std::ptrdiff_t>(reader.pos()),
                          bytes.begin() + static_cast<std::ptrdiff_t>(reader.pos() + count));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            frame.luma.push_back(static_cast<std::uint8_t>(reader.next_int("sample", 255)));
        }
    }
    return frame;
}

std::vector<std::uint8_t> encode_pgm(const Frame& frame) {
    const std::string header = "P5\n" + std::to_string(frame.width) + " " +
                               std::to_string(frame.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + frame.luma.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), frame.luma.begin(), frame.luma.end());
    return out;
}

Frame load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return decode_pgm(bytes);
}

void save_pgm(const Frame& frame, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_pgm(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

BlockGrid to_block_grid(const Frame& frame, int block_size) {
    if (block_size < 1) {
        throw std::invalid_argument("block_size must be >= 1");
    }
    if (frame.width < block_size || frame.height < block_size) {
        throw FrameTooSmallError("frame " + std::to_string(frame.width) + "x" +
                                 std::to_string(frame.height) +
                                 " smaller than one block of size " +
                                 std::to_string(block_size));
    }
    BlockGrid grid;
    grid.block_size = block_size;
    grid.rows = frame.height / block_size;
    grid.cols = frame.width / block_size;
    grid.values.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);

    const std::uint64_t pixels_per_block =
        static_cast<std::uint64_t>(block_size) * block_size;
    for (int block_row = 0; block_row < grid.rows; ++block_row) {
        for (int block_col = 0; block_col < grid.cols; ++block_col) {
            std::uint64_t sum = 0;
            for (int y = block_row * block_size; y < (block_row + 1) * block_size; ++y) {
                const std::uint8_t* row = frame.luma.data() +
                                          static_cast<std::size_t>(y) * frame.width;
                for (int x = block_col * block_size; x < (block_col + 1) * block_size; ++x) {
                    sum += row[x];
                }
            }
            grid.values.push_back(static_cast<std::uint8_t>(sum / pixels_per_block));
        }
    }
    return grid;
}

}  // namespace queenscan
