#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shadowseg/grid.hpp"

namespace shadowseg {

class PgmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PgmImage {
    Frame frame;
    int maxval = 255;
};

/// Binary PGM (P5), maxval in [1, 255]. Header comments are accepted.
PgmImage decode_pgm(std::string_view bytes);
std::string encode_pgm(const Frame& frame, int maxval = 255);

PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Frame& frame, int maxval = 255);

/// Label encoding of segmentation files: background 0, shadow 128,
/// foreground 255.
std::uint8_t encode_label(Label s);
/// Inverse of encode_label; any other byte throws PgmError.
Label decode_label(std::uint8_t value);

/// Throws std::invalid_argument on an uncommitted pixel.
void write_labels(const std::filesystem::path& path, const LabelField& labels);
LabelField read_labels(const std::filesystem::path& path);

/// A directory (every *.pgm inside, sorted by name) or a glob pattern.
std::vector<std::filesystem::path> list_sequence(const std::string& input);

/// Trailing decimal number of a file stem ("frame_00012" -> 12), or -1.
long frame_number(const std::filesystem::path& path);

} // namespace shadowseg
