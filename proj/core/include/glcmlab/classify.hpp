#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace glcmlab {

// Per-dimension affine transform to zero mean and unit variance, fitted on
// training rows only. A zero-variance dimension stores std 1 so it passes
// through as a constant 0.
class Standardizer {
 public:
  static Standardizer fit(const std::vector<std::vector<double>>& rows);

  std::vector<double> transform(std::span<const double> row) const;
  std::vector<std::vector<double>> transform_all(
      const std::vector<std::vector<double>>& rows) const;

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

// Lazy learner: stores the standardized training rows verbatim.
struct KnnModel {
  std::vector<std::vector<double>> points;
  std::vector<int> labels;
  int k = 1;
};

KnnModel knn_fit(std::vector<std::vector<double>> points, std::vector<int> labels, int k);

// Majority label among the k nearest by Euclidean distance. Deterministic
// tie-breaking: equal distances prefer the lower stored index; vote ties
// prefer the label whose nearest voter is closest, then the lower label code.
int knn_predict(const KnnModel& model, std::span<const double> query);

struct BinaryLinearModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(std::span<const double> x) const;
};

// Minimizes lambda/2 ||w||^2 + mean hinge loss by stochastic subgradient
// descent with step 1/(lambda*t) over seeded per-epoch shuffles; the bias is
// not regularized. Returns the average of all iterates. Labels must be in
// {-1, +1} with both present.
BinaryLinearModel svm_train_binary(const std::vector<std::vector<double>>& points,
                                   const std::vector<int>& labels, double lambda, int epochs,
                                   std::uint64_t seed);

// The trained objective, mainly for convergence checks.
double svm_objective(const BinaryLinearModel& model,
                     const std::vector<std::vector<double>>& points,
                     const std::vector<int>& labels, double lambda);

// One binary model per class (one-vs-rest), each trained with a seed derived
// from (seed, class) so the per-class problems are independent.
struct SvmModel {
  std::vector<BinaryLinearModel> per_class;
  double lambda = 0.01;
  int epochs = 100;
  std::uint64_t seed = 0;
};

SvmModel svm_train_ovr(const std::vector<std::vector<double>>& points,
                       const std::vector<int>& labels, int n_classes, double lambda, int epochs,
                       std::uint64_t seed);

// argmax of the per-class decision values; ties take the lower label code.
int svm_predict(const SvmModel& model, std::span<const double> query);

// Text persistence. Header "model-type,dimension,classes,k-or-lambda", then
// one "label,v1,...,vd" line per stored vector (knn) or one
// "w1,...,wd,bias" line per class (svm); values at 17 significant digits.
void save_knn(const KnnModel& model, std::ostream& out);
KnnModel load_knn(std::istream& in);
void save_svm(const SvmModel& model, std::ostream& out);
SvmModel load_svm(std::istream& in);

}  // namespace glcmlab
