#include "glcmlab/glcm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace glcmlab {

AngleOffset AngleOffset::for_degrees(int angle_degrees, int distance) {
  if (distance < 1) {
    throw std::invalid_argument("glcm distance must be >= 1, got " + std::to_string(distance));
  }
  int dr = 0;
  int dc = 0;
  switch (angle_degrees) {
    case 0:   dr = 0;  dc = 1;  break;
    case 45:  dr = -1; dc = 1;  break;
    case 90:  dr = -1; dc = 0;  break;
    case 135: dr = -1; dc = -1; break;
    default:
      throw std::invalid_argument("angle must be one of 0, 45, 90, 135; got " +
                                  std::to_string(angle_degrees));
  }
  return AngleOffset{angle_degrees, dr * distance, dc * distance, distance};
}

std::array<AngleOffset, 4> standard_offsets(int distance) {
  return {AngleOffset::for_degrees(0, distance), AngleOffset::for_degrees(45, distance),
          AngleOffset::for_degrees(90, distance), AngleOffset::for_degrees(135, distance)};
}

GlcmMatrix GlcmMatrix::from_counts(int levels, std::vector<std::uint64_t> counts) {
  if (levels < 2) {
    throw std::invalid_argument("glcm needs at least 2 levels");
  }
  const std::size_t cells = static_cast<std::size_t>(levels) * levels;
  if (counts.size() != cells) {
    throw std::invalid_argument("count grid has " + std::to_string(counts.size()) +
                                " cells, expected " + std::to_string(cells));
  }
  std::uint64_t total = 0;
  for (int i = 0; i < levels; ++i) {
    for (int j = 0; j < levels; ++j) {
      const std::uint64_t c = counts[static_cast<std::size_t>(i) * levels + j];
      if (c != counts[static_cast<std::size_t>(j) * levels + i]) {
        throw std::invalid_argument("count grid is not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
      total += c;
    }
  }
  if (total == 0) {
    throw std::invalid_argument("count grid is empty");
  }
  GlcmMatrix m;
  m.levels_ = levels;
  m.pair_count_ = total;
  m.probabilities_.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    m.probabilities_[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  m.counts_ = std::move(counts);
  return m;
}

GlcmMatrix compute_glcm(const GrayImage& image, const AngleOffset& offset) {
  const int h = image.height();
  const int w = image.width();
  const int levels = image.levels();

  // Clip the scan window so (r + dr, c + dc) is always in bounds.
  const int r_lo = std::max(0, -offset.dr);
  const int r_hi = std::min(h, h - offset.dr);
  const int c_lo = std::max(0, -offset.dc);
  const int c_hi = std::min(w, w - offset.dc);

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(levels) * levels, 0);
  std::uint64_t visits = 0;
  for (int r = r_lo; r < r_hi; ++r) {
    for (int c = c_lo; c < c_hi; ++c) {
      const int a = image.at(r, c);
      const int b = image.at(r + offset.dr, c + offset.dc);
      ++counts[static_cast<std::size_t>(a) * levels + b];
      ++counts[static_cast<std::size_t>(b) * levels + a];
      ++visits;
    }
  }
  if (visits == 0) {
    throw std::invalid_argument("no in-bounds pixel pairs for angle " +
                                std::to_string(offset.angle_degrees) + " at distance " +
                                std::to_string(offset.distance) + " on a " +
                                std::to_string(w) + "x" + std::to_string(h) + " image");
  }
  return GlcmMatrix::from_counts(levels, std::move(counts));
}

double energy(const GlcmMatrix& glcm) {
  double sum = 0.0;
  const int n = glcm.levels();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = glcm.prob(i, j);
      sum += p * p;
    }
  }
  return sum;
}

double contrast(const GlcmMatrix& glcm) {
  double sum = 0.0;
  const int n = glcm.levels();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = static_cast<double>(i - j);
      sum += d * d * glcm.prob(i, j);
    }
  }
  return sum;
}

double homogeneity(const GlcmMatrix& glcm) {
  double sum = 0.0;
  const int n = glcm.levels();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = static_cast<double>(i - j);
      sum += glcm.prob(i, j) / (1.0 + d * d);
    }
  }
  return sum;
}

double entropy(const GlcmMatrix& glcm) {
  double sum = 0.0;
  const int n = glcm.levels();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = glcm.prob(i, j);
      if (p > 0.0) sum -= p * std::log(p);
    }
  }
  return sum;
}

GlcmMarginals marginals(const GlcmMatrix& glcm) {
  const int n = glcm.levels();
  std::vector<double> px(n, 0.0);
  std::vector<double> py(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      px[i] += glcm.prob(i, j);
      py[j] += glcm.prob(i, j);
    }
  }
  double mu_x = 0.0;
  double mu_y = 0.0;
  for (int i = 0; i < n; ++i) {
    mu_x += i * px[i];
    mu_y += i * py[i];
  }
  double var_x = 0.0;
  double var_y = 0.0;
  for (int i = 0; i < n; ++i) {
    var_x += (i - mu_x) * (i - mu_x) * px[i];
    var_y += (i - mu_y) * (i - mu_y) * py[i];
  }
  return GlcmMarginals{mu_x, mu_y, std::sqrt(var_x), std::sqrt(var_y)};
}

double correlation(const GlcmMatrix& glcm) {
  const GlcmMarginals m = marginals(glcm);
  const double denom = m.sigma_x * m.sigma_y;
  if (denom == 0.0) return 0.0;

  double sum_ij = 0.0;
  const int n = glcm.levels();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sum_ij += static_cast<double>(i) * j * glcm.prob(i, j);
    }
  }
  return std::clamp((sum_ij - m.mu_x * m.mu_y) / denom, -1.0, 1.0);
}

std::string_view feature_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::energy: return "energy";
    case FeatureKind::contrast: return "contrast";
    case FeatureKind::homogeneity: return "homogeneity";
    case FeatureKind::entropy: return "entropy";
    case FeatureKind::correlation: return "correlation";
  }
  throw std::logic_error("unreachable feature kind");
}

std::optional<FeatureKind> feature_from_name(std::string_view name) {
  for (FeatureKind kind : kAllFeatures) {
    if (feature_name(kind) == name) return kind;
  }
  return std::nullopt;
}

double feature_value(const GlcmMatrix& glcm, FeatureKind kind) {
  switch (kind) {
    case FeatureKind::energy: return energy(glcm);
    case FeatureKind::contrast: return contrast(glcm);
    case FeatureKind::homogeneity: return homogeneity(glcm);
    case FeatureKind::entropy: return entropy(glcm);
    case FeatureKind::correlation: return correlation(glcm);
  }
  throw std::logic_error("unreachable feature kind");
}

namespace {

std::string valid_feature_names() {
  std::string names;
  for (FeatureKind kind : kAllFeatures) {
    if (!names.empty()) names += ", ";
    names += feature_name(kind);
  }
  return names;
}

}  // namespace

FeatureCombo::FeatureCombo(std::vector<FeatureKind> members) : members_(std::move(members)) {
  if (members_.size() < 2 || members_.size() > 3) {
    throw std::invalid_argument("a feature combo has 2 or 3 members, got " +
                                std::to_string(members_.size()));
  }
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("duplicate feature in combo");
  }
}

FeatureCombo FeatureCombo::parse(std::string_view text) {
  std::vector<FeatureKind> members;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = std::min(text.find('+', start), text.size());
    const std::string_view part = text.substr(start, plus - start);
    const auto kind = feature_from_name(part);
    if (!kind) {
      throw std::invalid_argument("unknown feature \"" + std::string(part) +
                                  "\"; valid names: " + valid_feature_names());
    }
    members.push_back(*kind);
    if (plus == text.size()) break;
    start = plus + 1;
  }
  return FeatureCombo(std::move(members));
}

std::string FeatureCombo::name() const {
  std::string out;
  for (FeatureKind kind : members_) {
    if (!out.empty()) out += '+';
    out += feature_name(kind);
  }
  return out;
}

std::vector<FeatureCombo> enumerate_combos() {
  std::vector<FeatureCombo> combos;
  const int n = static_cast<int>(kAllFeatures.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      combos.push_back(FeatureCombo({kAllFeatures[i], kAllFeatures[j]}));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        combos.push_back(FeatureCombo({kAllFeatures[i], kAllFeatures[j], kAllFeatures[k]}));
      }
    }
  }
  return combos;
}

FeatureVector extract_features(const GrayImage& image, const FeatureCombo& combo,
                               int distance, ExtractStats* stats) {
  std::vector<double> values;
  values.reserve(4 * combo.size());
  for (const AngleOffset& offset : standard_offsets(distance)) {
    const GlcmMatrix glcm = compute_glcm(image, offset);
    if (stats != nullptr) stats->pair_visits += glcm.visited_pairs();
    for (FeatureKind kind : combo.members()) {
      values.push_back(feature_value(glcm, kind));
    }
  }
  return FeatureVector{combo, std::move(values)};
}

void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& vectors,
                       const std::vector<int>& labels) {
  if (vectors.size() != labels.size()) {
    throw std::invalid_argument("feature rows and labels differ in length");
  }
  if (vectors.empty()) {
    throw std::invalid_argument("no feature rows to write");
  }
  out << "sample_index,label";
  for (int angle : kAngleDegrees) {
    for (FeatureKind kind : vectors.front().combo.members()) {
      out << ',' << feature_name(kind) << '_' << angle;
    }
  }
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out << i << ',' << labels[i];
    for (double v : vectors[i].values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace glcmlab
