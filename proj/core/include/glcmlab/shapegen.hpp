#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "glcmlab/gray_image.hpp"
#include "glcmlab/rng.hpp"

namespace glcmlab {

enum class ShapeClass : int { triangle = 0, square = 1, circle = 2 };

inline constexpr std::array<ShapeClass, 3> kAllShapes = {
    ShapeClass::triangle, ShapeClass::square, ShapeClass::circle};

std::string_view shape_name(ShapeClass shape);

// Geometry and rendering parameters for one synthetic sample.
//
// scale is the diameter of the shape's circumscribed circle as a fraction of
// the image side, for all three shapes: a circle is a disk of radius
// scale*side/2, square and triangle are inscribed in that disk (square
// axis-aligned before rotation, triangle equilateral with the apex initially
// pointing up). Defining scale via the circumcircle keeps the bounding box
// inside the image for every rotation whenever center +- scale/2 stays in
// [0, 1], which is the validated invariant. The dataset generator samples
// scale from [0.3, 0.9] and centers from [0.35, 0.65], further clipped so
// that invariant holds.
struct ShapeParams {
  ShapeClass shape = ShapeClass::circle;
  double rotation = 0.0;     // radians
  double scale = 0.5;        // circumcircle diameter / image side
  double center_x = 0.5;     // fraction of side
  double center_y = 0.5;
  int foreground = 6;
  int background = 1;
  double noise_sigma = 0.0;  // gray-level units
};

// Generator defaults; interior levels so noise clamping stays symmetric.
int default_background(int levels);  // levels/8, i.e. 1 at L = 8
int default_foreground(int levels);  // 6*levels/8, i.e. 6 at L = 8

// Rasterizes by point-in-shape test at pixel centers after inverse rotation
// about the center. Rotating a circle is a pixel-exact no-op, and rotations
// that are exact multiples of pi/2 map a square to itself exactly.
// Requires noise_sigma == 0 for the overload without a stream; with noise,
// one Gaussian draw is consumed per pixel in raster order.
GrayImage render_shape(const ShapeParams& params, int side, int levels);
GrayImage render_shape(const ShapeParams& params, int side, int levels, rng::Stream& noise);

struct DatasetConfig {
  int n_per_class = 1000;
  int side = 64;
  int levels = 8;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  double train_fraction = 0.9;  // recorded by split_dataset
};

// Samples grouped by class: indices [c*n, (c+1)*n) carry label c.
struct LabeledDataset {
  std::vector<GrayImage> images;
  std::vector<int> labels;
  std::vector<int> train;  // empty until split_dataset
  std::vector<int> test;
  DatasetConfig config;

  int n_classes() const;
};

// Draws the parameters of sample `index` from its dedicated substream. The
// same stream then feeds pixel noise, so any sample can be regenerated in
// isolation and generation order cannot matter.
ShapeParams sample_params(const DatasetConfig& config, int index, rng::Stream& stream);

// 3 * n_per_class samples, byte-identical for identical arguments.
LabeledDataset generate_dataset(int n_per_class, int side, int levels, double noise_sigma,
                                std::uint64_t seed);

// Stratified per-class shuffle; train counts are round(fraction * class size),
// clamped so every class keeps at least one sample on each side.
LabeledDataset split_dataset(LabeledDataset dataset, double train_fraction, std::uint64_t seed);

}  // namespace glcmlab
