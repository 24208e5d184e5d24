#include "glcmlab/gray_image.hpp"

#include <stdexcept>
#include <string>

namespace glcmlab {

namespace {

void check_dims(int width, int height, int levels) {
  if (width < 2 || height < 2) {
    throw std::invalid_argument("image dimensions must be at least 2x2, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  if (levels < 2 || levels > 256) {
    throw std::invalid_argument("levels must be in [2, 256], got " + std::to_string(levels));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, int levels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), levels_(levels), pixels_(std::move(pixels)) {
  check_dims(width, height, levels);
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (pixels_.size() != expected) {
    throw std::invalid_argument("pixel buffer has " + std::to_string(pixels_.size()) +
                                " bytes, expected " + std::to_string(expected));
  }
  for (std::uint8_t p : pixels_) {
    if (p >= levels_) {
      throw std::invalid_argument("pixel value " + std::to_string(p) +
                                  " out of range for " + std::to_string(levels_) + " levels");
    }
  }
}

GrayImage GrayImage::filled(int width, int height, int levels, std::uint8_t value) {
  check_dims(width, height, levels);
  return GrayImage(width, height, levels,
                   std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, value));
}

GrayImage GrayImage::with_levels(int new_levels) const {
  return GrayImage(width_, height_, new_levels, pixels_);
}

GrayImage resize_nearest(const GrayImage& image, int new_width, int new_height) {
  if (new_width < 2 || new_height < 2) {
    throw std::invalid_argument("resize target must be at least 2x2, got " +
                                std::to_string(new_width) + "x" + std::to_string(new_height));
  }
  std::vector<std::uint8_t> out(static_cast<std::size_t>(new_width) * new_height);
  for (int r = 0; r < new_height; ++r) {
    const int src_r = static_cast<int>(static_cast<std::int64_t>(r) * image.height() / new_height);
    for (int c = 0; c < new_width; ++c) {
      const int src_c = static_cast<int>(static_cast<std::int64_t>(c) * image.width() / new_width);
      out[static_cast<std::size_t>(r) * new_width + c] = image.at(src_r, src_c);
    }
  }
  return GrayImage(new_width, new_height, image.levels(), std::move(out));
}

GrayImage quantize(const GrayImage& image, int target_levels) {
  if (target_levels < 2 || target_levels > image.levels()) {
    throw std::invalid_argument("target_levels must be in [2, " +
                                std::to_string(image.levels()) + "], got " +
                                std::to_string(target_levels));
  }
  std::vector<std::uint8_t> out;
  out.reserve(image.pixels().size());
  for (std::uint8_t p : image.pixels()) {
    out.push_back(static_cast<std::uint8_t>(static_cast<int>(p) * target_levels / image.levels()));
  }
  return GrayImage(image.width(), image.height(), target_levels, std::move(out));
}

}  // namespace glcmlab
