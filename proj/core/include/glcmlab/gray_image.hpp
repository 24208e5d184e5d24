#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace glcmlab {

// Row-major grid of quantized gray levels in [0, levels). Immutable value
// type; all pipeline stages take and return images by value.
//
// Invariants, checked at construction:
//   - width >= 2 and height >= 2 (a co-occurrence matrix needs pixel pairs)
//   - 2 <= levels <= 256
//   - pixels.size() == width * height and every pixel < levels
class GrayImage {
 public:
  GrayImage(int width, int height, int levels, std::vector<std::uint8_t> pixels);

  static GrayImage filled(int width, int height, int levels, std::uint8_t value);

  int width() const { return width_; }
  int height() const { return height_; }
  int levels() const { return levels_; }

  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  // Same pixels reinterpreted under a different level count. Used when a
  // dataset manifest records the true quantization of 8-bit PGM files.
  GrayImage with_levels(int new_levels) const;

  bool operator==(const GrayImage&) const = default;

 private:
  int width_;
  int height_;
  int levels_;
  std::vector<std::uint8_t> pixels_;
};

// Nearest-neighbor resampling: source index = floor(target * src / dst).
// Keeps the discrete level set intact, unlike interpolating resamplers.
GrayImage resize_nearest(const GrayImage& image, int new_width, int new_height);

// Uniform requantization: new = floor(old * target_levels / levels).
// Requires 2 <= target_levels <= image.levels().
GrayImage quantize(const GrayImage& image, int target_levels);

}  // namespace glcmlab
