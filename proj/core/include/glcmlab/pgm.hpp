#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "glcmlab/gray_image.hpp"

namespace glcmlab {

// Binary PGM (P5), maxval <= 255. Header is ASCII "P5\n<w> <h>\n<maxval>\n"
// followed by the w*h raster. The reader also accepts '#' comments and any
// whitespace between header tokens, as the format allows.

// Decodes a P5 byte stream. The result always has levels = 256; callers that
// know the true quantization reinterpret via GrayImage::with_levels.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

// Encodes with maxval = levels - 1, so read_pgm(write_pgm(x)) == x whenever
// x.levels() == 256.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const GrayImage& image, const std::filesystem::path& path);

}  // namespace glcmlab
