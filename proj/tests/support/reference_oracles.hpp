#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately share no code with the production paths: the GLCM
// oracle enumerates every ordered pair of pixel positions, and the K-NN
// reference fully sorts all distances.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "glcmlab/gray_image.hpp"

namespace glcmlab::testing {

// Counts (v(p), v(q)) for every ordered position pair (p, q) whose
// displacement is +offset or -offset. Quartic in the side length, so keep
// images small; obviously correct by construction.
inline std::vector<std::uint64_t> brute_force_glcm_counts(const GrayImage& image, int dr,
                                                          int dc) {
  const int h = image.height();
  const int w = image.width();
  const int levels = image.levels();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(levels) * levels, 0);
  for (int r1 = 0; r1 < h; ++r1) {
    for (int c1 = 0; c1 < w; ++c1) {
      for (int r2 = 0; r2 < h; ++r2) {
        for (int c2 = 0; c2 < w; ++c2) {
          const bool forward = (r2 - r1 == dr) && (c2 - c1 == dc);
          const bool backward = (r1 - r2 == dr) && (c1 - c2 == dc);
          if (forward || backward) {
            ++counts[static_cast<std::size_t>(image.at(r1, c1)) * levels + image.at(r2, c2)];
          }
        }
      }
    }
  }
  return counts;
}

// Full-sort K-NN with the documented tie rules: equal distances prefer the
// lower stored index; vote ties prefer the label with the closest voter,
// then the lower label code.
inline int knn_reference(const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels, int k, std::span<const double> query) {
  struct Entry {
    double dist2;
    int index;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double sum = 0.0;
    for (std::size_t d = 0; d < query.size(); ++d) {
      const double delta = points[i][d] - query[d];
      sum += delta * delta;
    }
    entries.push_back({sum, static_cast<int>(i)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.dist2 != b.dist2 ? a.dist2 < b.dist2 : a.index < b.index;
  });

  std::map<int, int> votes;
  std::map<int, double> closest;
  for (int i = 0; i < k; ++i) {
    const int label = labels[entries[i].index];
    ++votes[label];
    if (!closest.count(label)) closest[label] = entries[i].dist2;
  }
  int best = -1;
  int best_votes = -1;
  double best_closest = std::numeric_limits<double>::infinity();
  for (const auto& [label, n] : votes) {
    if (n > best_votes || (n == best_votes && closest[label] < best_closest)) {
      best = label;
      best_votes = n;
      best_closest = closest[label];
    }
  }
  return best;
}

}  // namespace glcmlab::testing
