#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "glcmlab/gray_image.hpp"

namespace glcmlab {

// Pixel-pair displacement for one co-occurrence direction. The four standard
// angles map to row/column deltas as (rows indexed top to bottom):
//   0 -> (0, +1)   45 -> (-1, +1)   90 -> (-1, 0)   135 -> (-1, -1)
// each scaled by distance. Counting is symmetric, so the sign of the offset
// does not affect the matrix; only the axis pairing matters.
struct AngleOffset {
  int angle_degrees;
  int dr;
  int dc;
  int distance;

  static AngleOffset for_degrees(int angle_degrees, int distance = 1);
};

inline constexpr std::array<int, 4> kAngleDegrees = {0, 45, 90, 135};

std::array<AngleOffset, 4> standard_offsets(int distance = 1);

// Symmetric, normalized co-occurrence matrix. Each in-bounds pixel pair is
// counted in both orders, so counts are exactly symmetric and the row/column
// marginals coincide. Probabilities are counts / pair_count.
class GlcmMatrix {
 public:
  static GlcmMatrix from_counts(int levels, std::vector<std::uint64_t> counts);

  int levels() const { return levels_; }
  double prob(int i, int j) const {
    return probabilities_[static_cast<std::size_t>(i) * levels_ + j];
  }
  std::uint64_t count(int i, int j) const {
    return counts_[static_cast<std::size_t>(i) * levels_ + j];
  }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // Total counted entries, two per visited pixel pair.
  std::uint64_t pair_count() const { return pair_count_; }
  // In-bounds pixel pairs visited while scanning; the unit of the
  // machine-independent complexity measure.
  std::uint64_t visited_pairs() const { return pair_count_ / 2; }

 private:
  GlcmMatrix() = default;

  int levels_ = 0;
  std::uint64_t pair_count_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<double> probabilities_;
};

// Scans the image once, counting (p, p+offset) value pairs and their
// transposes. Throws if the offset leaves no in-bounds pair.
GlcmMatrix compute_glcm(const GrayImage& image, const AngleOffset& offset);

// Marginal moments of the index distribution. For a symmetric matrix the
// row and column moments coincide.
struct GlcmMarginals {
  double mu_x;
  double mu_y;
  double sigma_x;
  double sigma_y;
};

double energy(const GlcmMatrix& glcm);       // sum P(i,j)^2, in (0, 1]
double contrast(const GlcmMatrix& glcm);     // sum (i-j)^2 P(i,j)
double homogeneity(const GlcmMatrix& glcm);  // sum P(i,j) / (1 + (i-j)^2)
double entropy(const GlcmMatrix& glcm);      // -sum P log P, natural log, 0 log 0 = 0
GlcmMarginals marginals(const GlcmMatrix& glcm);
// (sum ij P - mu_x mu_y) / (sigma_x sigma_y), clamped to [-1, 1].
// Returns 0 when sigma_x * sigma_y == 0 (constant image): no measurable
// linear dependence.
double correlation(const GlcmMatrix& glcm);

enum class FeatureKind { energy, contrast, homogeneity, entropy, correlation };

inline constexpr std::array<FeatureKind, 5> kAllFeatures = {
    FeatureKind::energy, FeatureKind::contrast, FeatureKind::homogeneity,
    FeatureKind::entropy, FeatureKind::correlation};

std::string_view feature_name(FeatureKind kind);
std::optional<FeatureKind> feature_from_name(std::string_view name);
double feature_value(const GlcmMatrix& glcm, FeatureKind kind);

// An ordered subset of 2 or 3 features, stored in canonical order
// (energy, contrast, homogeneity, entropy, correlation).
class FeatureCombo {
 public:
  explicit FeatureCombo(std::vector<FeatureKind> members);

  // Parses "energy+homogeneity" style spellings; throws with the list of
  // valid names on an unknown feature and on duplicates.
  static FeatureCombo parse(std::string_view text);

  const std::vector<FeatureKind>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::string name() const;  // members joined with '+'

  bool operator==(const FeatureCombo&) const = default;

 private:
  std::vector<FeatureKind> members_;
};

// All 10 pairs followed by all 10 triples, lexicographic by canonical
// feature indices.
std::vector<FeatureCombo> enumerate_combos();

// Per-angle feature values, angle-major: for each angle ascending, each
// combo member in canonical order. Dimension = 4 * combo size.
struct FeatureVector {
  FeatureCombo combo;
  std::vector<double> values;
};

struct ExtractStats {
  std::uint64_t pair_visits = 0;  // summed over the four angle scans
};

FeatureVector extract_features(const GrayImage& image, const FeatureCombo& combo,
                               int distance = 1, ExtractStats* stats = nullptr);

// CSV export: header "sample_index,label,<feature>_<angle>..." in vector
// order, values at 17 significant digits.
void write_feature_csv(std::ostream& out, const std::vector<FeatureVector>& vectors,
                       const std::vector<int>& labels);

}  // namespace glcmlab
