#include "glcmlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "glcmlab/rng.hpp"

namespace glcmlab {

namespace {

void check_rows(const std::vector<std::vector<double>>& rows, std::size_t min_rows) {
  if (rows.size() < min_rows) {
    throw std::invalid_argument("need at least " + std::to_string(min_rows) +
                                " rows, got " + std::to_string(rows.size()));
  }
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) {
      throw std::invalid_argument("rows differ in dimension");
    }
  }
  if (rows.front().empty()) {
    throw std::invalid_argument("rows must have at least one dimension");
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

void format_values(std::ostream& out, std::span<const double> values, bool leading_comma) {
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 || leading_comma) out << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
    out << buf;
  }
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

struct ModelHeader {
  std::string type;
  int dimension;
  int classes;
  std::string k_or_lambda;
};

ModelHeader read_header(std::istream& in, const std::string& expected_type) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("model file: missing header");
  }
  const auto fields = split_fields(line);
  if (fields.size() != 4) {
    throw std::runtime_error("model file: malformed header \"" + line + "\"");
  }
  if (fields[0] != expected_type) {
    throw std::runtime_error("model file: expected type " + expected_type + ", got " + fields[0]);
  }
  return ModelHeader{fields[0], std::stoi(fields[1]), std::stoi(fields[2]), fields[3]};
}

}  // namespace

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
  check_rows(rows, 2);
  const std::size_t dim = rows.front().size();
  const double n = static_cast<double>(rows.size());

  Standardizer s;
  s.mean_.assign(dim, 0.0);
  s.stddev_.assign(dim, 0.0);
  for (const auto& row : rows) {
    for (std::size_t d = 0; d < dim; ++d) s.mean_[d] += row[d];
  }
  for (std::size_t d = 0; d < dim; ++d) s.mean_[d] /= n;
  for (const auto& row : rows) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double delta = row[d] - s.mean_[d];
      s.stddev_[d] += delta * delta;
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    const double sd = std::sqrt(s.stddev_[d] / n);  // population std
    s.stddev_[d] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::transform(std::span<const double> row) const {
  if (row.size() != mean_.size()) {
    throw std::invalid_argument("standardizer fitted on dimension " +
                                std::to_string(mean_.size()) + ", got " +
                                std::to_string(row.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t d = 0; d < row.size(); ++d) {
    out[d] = (row[d] - mean_[d]) / stddev_[d];
  }
  return out;
}

std::vector<std::vector<double>> Standardizer::transform_all(
    const std::vector<std::vector<double>>& rows) const {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(transform(row));
  return out;
}

KnnModel knn_fit(std::vector<std::vector<double>> points, std::vector<int> labels, int k) {
  check_rows(points, 1);
  if (points.size() != labels.size()) {
    throw std::invalid_argument("points and labels differ in length");
  }
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(points.size()) +
                                "], got " + std::to_string(k));
  }
  return KnnModel{std::move(points), std::move(labels), k};
}

int knn_predict(const KnnModel& model, std::span<const double> query) {
  if (query.size() != model.points.front().size()) {
    throw std::invalid_argument("query dimension mismatch");
  }
  const std::size_t n = model.points.size();
  std::vector<std::pair<double, int>> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = {squared_distance(model.points[i], query), static_cast<int>(i)};
  }
  // (distance, stored index) is a strict total order, so the k smallest are
  // unique and partial_sort agrees with a full sort.
  const std::size_t k = static_cast<std::size_t>(model.k);
  std::partial_sort(order.begin(), order.begin() + k, order.end());

  std::map<int, int> votes;
  std::map<int, double> nearest;
  for (std::size_t i = 0; i < k; ++i) {
    const int label = model.labels[order[i].second];
    ++votes[label];
    if (!nearest.count(label)) nearest[label] = order[i].first;  // ascending scan
  }
  int best_label = -1;
  int best_votes = -1;
  double best_nearest = std::numeric_limits<double>::infinity();
  for (const auto& [label, count] : votes) {
    const double near = nearest[label];
    const bool wins = count > best_votes ||
                      (count == best_votes &&
                       (near < best_nearest || (near == best_nearest && label < best_label)));
    if (wins) {
      best_label = label;
      best_votes = count;
      best_nearest = near;
    }
  }
  return best_label;
}

double BinaryLinearModel::decision(std::span<const double> x) const {
  double sum = bias;
  for (std::size_t d = 0; d < weights.size(); ++d) sum += weights[d] * x[d];
  return sum;
}

BinaryLinearModel svm_train_binary(const std::vector<std::vector<double>>& points,
                                   const std::vector<int>& labels, double lambda, int epochs,
                                   std::uint64_t seed) {
  check_rows(points, 2);
  if (points.size() != labels.size()) {
    throw std::invalid_argument("points and labels differ in length");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("lambda must be positive");
  }
  if (epochs < 1) {
    throw std::invalid_argument("epochs must be >= 1");
  }
  bool seen_pos = false;
  bool seen_neg = false;
  for (int y : labels) {
    if (y == 1) seen_pos = true;
    else if (y == -1) seen_neg = true;
    else throw std::invalid_argument("binary labels must be -1 or +1");
  }
  if (!seen_pos || !seen_neg) {
    throw std::invalid_argument("degenerate training set: both classes must be present");
  }

  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<double> w_sum(dim, 0.0);
  double b_sum = 0.0;

  auto stream = rng::Stream(rng::mix(seed));
  std::vector<std::size_t> visit(n);
  std::iota(visit.begin(), visit.end(), std::size_t{0});

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng::shuffle(visit, stream);
    for (std::size_t i : visit) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto& x = points[i];
      const double y = labels[i];
      double margin = b;
      for (std::size_t d = 0; d < dim; ++d) margin += w[d] * x[d];
      margin *= y;

      const double keep = 1.0 - eta * lambda;
      if (margin < 1.0) {
        for (std::size_t d = 0; d < dim; ++d) w[d] = keep * w[d] + eta * y * x[d];
        b += eta * y;
      } else {
        for (std::size_t d = 0; d < dim; ++d) w[d] *= keep;
      }
      for (std::size_t d = 0; d < dim; ++d) w_sum[d] += w[d];
      b_sum += b;
    }
  }

  const double total = static_cast<double>(t);
  BinaryLinearModel model;
  model.weights.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) model.weights[d] = w_sum[d] / total;
  model.bias = b_sum / total;
  return model;
}

double svm_objective(const BinaryLinearModel& model,
                     const std::vector<std::vector<double>>& points,
                     const std::vector<int>& labels, double lambda) {
  double norm2 = 0.0;
  for (double wd : model.weights) norm2 += wd * wd;
  double hinge = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    hinge += std::max(0.0, 1.0 - labels[i] * model.decision(points[i]));
  }
  return 0.5 * lambda * norm2 + hinge / static_cast<double>(points.size());
}

SvmModel svm_train_ovr(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels, int n_classes, double lambda, int epochs,
                       std::uint64_t seed) {
  if (n_classes < 2) {
    throw std::invalid_argument("need at least 2 classes");
  }
  std::vector<bool> present(n_classes, false);
  for (int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw std::invalid_argument("label " + std::to_string(label) + " outside [0, " +
                                  std::to_string(n_classes) + ")");
    }
    present[label] = true;
  }
  for (int c = 0; c < n_classes; ++c) {
    if (!present[c]) {
      throw std::invalid_argument("class " + std::to_string(c) + " missing from training set");
    }
  }

  SvmModel model;
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;
  model.per_class.reserve(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    std::vector<int> binary(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) binary[i] = labels[i] == c ? 1 : -1;
    const std::uint64_t class_seed = rng::mix(seed + rng::kGolden * (c + 1));
    model.per_class.push_back(svm_train_binary(points, binary, lambda, epochs, class_seed));
  }
  return model;
}

int svm_predict(const SvmModel& model, std::span<const double> query) {
  if (model.per_class.empty()) {
    throw std::invalid_argument("empty svm model");
  }
  if (query.size() != model.per_class.front().weights.size()) {
    throw std::invalid_argument("query dimension mismatch");
  }
  int best = 0;
  double best_score = model.per_class[0].decision(query);
  for (int c = 1; c < static_cast<int>(model.per_class.size()); ++c) {
    const double score = model.per_class[c].decision(query);
    if (score > best_score) {  // strict: ties keep the lower label code
      best = c;
      best_score = score;
    }
  }
  return best;
}

void save_knn(const KnnModel& model, std::ostream& out) {
  const int classes = *std::max_element(model.labels.begin(), model.labels.end()) + 1;
  out << "knn," << model.points.front().size() << ',' << classes << ',' << model.k << '\n';
  for (std::size_t i = 0; i < model.points.size(); ++i) {
    out << model.labels[i];
    format_values(out, model.points[i], true);
    out << '\n';
  }
}

KnnModel load_knn(std::istream& in) {
  const ModelHeader header = read_header(in, "knn");
  std::vector<std::vector<double>> points;
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != header.dimension + 1) {
      throw std::runtime_error("knn model: row has " + std::to_string(fields.size() - 1) +
                               " values, expected " + std::to_string(header.dimension));
    }
    labels.push_back(std::stoi(fields[0]));
    std::vector<double> row(header.dimension);
    for (int d = 0; d < header.dimension; ++d) row[d] = std::stod(fields[d + 1]);
    points.push_back(std::move(row));
  }
  return knn_fit(std::move(points), std::move(labels), std::stoi(header.k_or_lambda));
}

void save_svm(const SvmModel& model, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", model.lambda);
  out << "svm," << model.per_class.front().weights.size() << ',' << model.per_class.size() << ','
      << buf << '\n';
  for (const BinaryLinearModel& m : model.per_class) {
    format_values(out, m.weights, false);
    std::snprintf(buf, sizeof(buf), "%.17g", m.bias);
    out << ',' << buf << '\n';
  }
}

SvmModel load_svm(std::istream& in) {
  const ModelHeader header = read_header(in, "svm");
  SvmModel model;
  model.lambda = std::stod(header.k_or_lambda);
  model.epochs = 0;  // training metadata is not persisted
  model.seed = 0;
  std::string line;
  for (int c = 0; c < header.classes; ++c) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("svm model: expected " + std::to_string(header.classes) +
                               " class rows");
    }
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != header.dimension + 1) {
      throw std::runtime_error("svm model: row has " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(header.dimension + 1));
    }
    BinaryLinearModel m;
    m.weights.resize(header.dimension);
    for (int d = 0; d < header.dimension; ++d) m.weights[d] = std::stod(fields[d]);
    m.bias = std::stod(fields[header.dimension]);
    model.per_class.push_back(std::move(m));
  }
  return model;
}

}  // namespace glcmlab
