#include "glcmlab/shapegen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace glcmlab {

namespace {

constexpr std::uint64_t kSplitSalt = 0x51173a11ec0de5ull;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sampling ranges used by generate_dataset.
constexpr double kScaleMin = 0.3;
constexpr double kScaleMax = 0.9;
constexpr double kCenterMin = 0.35;
constexpr double kCenterMax = 0.65;

struct Vec2 {
  double x;
  double y;
};

// cos/sin with values snapped to exact {-1, 0, 1} near multiples of pi/2, so
// quarter-turn symmetries hold pixel-exactly.
Vec2 rotation_basis(double rotation) {
  double c = std::cos(rotation);
  double s = std::sin(rotation);
  auto snap = [](double v) {
    if (std::abs(v) < 1e-12) return 0.0;
    if (std::abs(v - 1.0) < 1e-12) return 1.0;
    if (std::abs(v + 1.0) < 1e-12) return -1.0;
    return v;
  };
  return Vec2{snap(c), snap(s)};
}

bool inside_triangle(double u, double v, double circumradius) {
  // Equilateral, apex up (negative v: rows grow downward), centroid at origin.
  const double r = circumradius;
  const double hx = r * std::numbers::sqrt3 / 2.0;
  const Vec2 a{0.0, -r};
  const Vec2 b{-hx, r / 2.0};
  const Vec2 c{hx, r / 2.0};
  auto edge = [u, v](const Vec2& p, const Vec2& q) {
    return (q.x - p.x) * (v - p.y) - (q.y - p.y) * (u - p.x);
  };
  const double e0 = edge(a, b);
  const double e1 = edge(b, c);
  const double e2 = edge(c, a);
  return (e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0) || (e0 <= 0.0 && e1 <= 0.0 && e2 <= 0.0);
}

void validate_params(const ShapeParams& p, int side, int levels) {
  if (side < 8) {
    throw std::invalid_argument("image side must be >= 8, got " + std::to_string(side));
  }
  if (levels < 2 || levels > 256) {
    throw std::invalid_argument("levels must be in [2, 256]");
  }
  if (p.foreground < 0 || p.foreground >= levels || p.background < 0 || p.background >= levels) {
    throw std::invalid_argument("foreground/background must be in [0, levels)");
  }
  if (p.foreground == p.background) {
    throw std::invalid_argument("foreground and background must differ");
  }
  if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma)) {
    throw std::invalid_argument("noise_sigma must be finite and >= 0");
  }
  if (!(p.scale > 0.0) || !std::isfinite(p.rotation)) {
    throw std::invalid_argument("scale must be positive and rotation finite");
  }
  const double reach = p.scale / 2.0;
  if (p.center_x - reach < 0.0 || p.center_x + reach > 1.0 || p.center_y - reach < 0.0 ||
      p.center_y + reach > 1.0) {
    throw std::invalid_argument("shape bounding box leaves the image: scale " +
                                std::to_string(p.scale) + " at center (" +
                                std::to_string(p.center_x) + ", " + std::to_string(p.center_y) +
                                ")");
  }
}

GrayImage render_impl(const ShapeParams& p, int side, int levels, rng::Stream* noise) {
  validate_params(p, side, levels);

  const double radius = p.scale / 2.0;
  const double square_half = radius / std::numbers::sqrt2;
  const Vec2 basis = rotation_basis(p.rotation);

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(side) * side);
  std::size_t k = 0;
  for (int r = 0; r < side; ++r) {
    const double dy = (r + 0.5) / side - p.center_y;
    for (int c = 0; c < side; ++c, ++k) {
      const double dx = (c + 0.5) / side - p.center_x;

      bool inside = false;
      switch (p.shape) {
        case ShapeClass::circle:
          // Rotation-invariant, so skip the rotation entirely: rotating a
          // circle must be a pixel-exact no-op.
          inside = dx * dx + dy * dy <= radius * radius;
          break;
        case ShapeClass::square: {
          const double u = basis.x * dx + basis.y * dy;
          const double v = -basis.y * dx + basis.x * dy;
          inside = std::max(std::abs(u), std::abs(v)) <= square_half;
          break;
        }
        case ShapeClass::triangle: {
          const double u = basis.x * dx + basis.y * dy;
          const double v = -basis.y * dx + basis.x * dy;
          inside = inside_triangle(u, v, radius);
          break;
        }
      }

      int value = inside ? p.foreground : p.background;
      if (p.noise_sigma > 0.0) {
        const double noisy = value + p.noise_sigma * noise->next_gaussian();
        value = std::clamp(static_cast<int>(std::lround(noisy)), 0, levels - 1);
      }
      pixels[k] = static_cast<std::uint8_t>(value);
    }
  }
  return GrayImage(side, side, levels, std::move(pixels));
}

}  // namespace

std::string_view shape_name(ShapeClass shape) {
  switch (shape) {
    case ShapeClass::triangle: return "triangle";
    case ShapeClass::square: return "square";
    case ShapeClass::circle: return "circle";
  }
  throw std::logic_error("unreachable shape class");
}

int default_background(int levels) { return levels / 8; }
int default_foreground(int levels) { return 6 * levels / 8; }

GrayImage render_shape(const ShapeParams& params, int side, int levels) {
  if (params.noise_sigma > 0.0) {
    throw std::invalid_argument("noisy render needs an explicit noise stream");
  }
  return render_impl(params, side, levels, nullptr);
}

GrayImage render_shape(const ShapeParams& params, int side, int levels, rng::Stream& noise) {
  return render_impl(params, side, levels, &noise);
}

int LabeledDataset::n_classes() const {
  int n = 0;
  for (int label : labels) n = std::max(n, label + 1);
  return n;
}

ShapeParams sample_params(const DatasetConfig& config, int index, rng::Stream& stream) {
  ShapeParams p;
  p.shape = kAllShapes[static_cast<std::size_t>(index) / config.n_per_class];
  p.rotation = stream.next_in(0.0, kTwoPi);
  p.scale = stream.next_in(kScaleMin, kScaleMax);
  const double lo = std::max(kCenterMin, p.scale / 2.0);
  const double hi = std::min(kCenterMax, 1.0 - p.scale / 2.0);
  p.center_x = stream.next_in(lo, hi);
  p.center_y = stream.next_in(lo, hi);
  p.foreground = default_foreground(config.levels);
  p.background = default_background(config.levels);
  p.noise_sigma = config.noise_sigma;
  return p;
}

LabeledDataset generate_dataset(int n_per_class, int side, int levels, double noise_sigma,
                                std::uint64_t seed) {
  if (n_per_class < 10) {
    throw std::invalid_argument("n_per_class must be >= 10, got " + std::to_string(n_per_class));
  }
  LabeledDataset dataset;
  dataset.config = DatasetConfig{n_per_class, side, levels, noise_sigma, seed, 0.0};

  const int total = 3 * n_per_class;
  dataset.images.reserve(total);
  dataset.labels.reserve(total);
  for (int index = 0; index < total; ++index) {
    auto stream = rng::Stream::for_substream(seed, static_cast<std::uint64_t>(index));
    const ShapeParams params = sample_params(dataset.config, index, stream);
    dataset.images.push_back(render_shape(params, side, levels, stream));
    dataset.labels.push_back(static_cast<int>(params.shape));
  }
  return dataset;
}

LabeledDataset split_dataset(LabeledDataset dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must be in (0, 1)");
  }
  const int n_classes = dataset.n_classes();
  std::vector<std::vector<int>> by_class(n_classes);
  for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
    by_class[dataset.labels[i]].push_back(static_cast<int>(i));
  }

  dataset.train.clear();
  dataset.test.clear();
  for (int c = 0; c < n_classes; ++c) {
    auto& indices = by_class[c];
    if (indices.size() < 2) {
      throw std::invalid_argument("class " + std::to_string(c) +
                                  " has fewer than 2 samples; cannot stratify");
    }
    auto stream = rng::Stream::for_substream(seed ^ kSplitSalt, static_cast<std::uint64_t>(c));
    rng::shuffle(indices, stream);
    const auto size = static_cast<long>(indices.size());
    const long n_train =
        std::clamp(std::lround(train_fraction * static_cast<double>(size)), 1L, size - 1);
    dataset.train.insert(dataset.train.end(), indices.begin(), indices.begin() + n_train);
    dataset.test.insert(dataset.test.end(), indices.begin() + n_train, indices.end());
  }
  std::sort(dataset.train.begin(), dataset.train.end());
  std::sort(dataset.test.begin(), dataset.test.end());
  dataset.config.train_fraction = train_fraction;
  return dataset;
}

}  // namespace glcmlab
