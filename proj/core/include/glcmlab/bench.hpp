#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "glcmlab/glcm.hpp"
#include "glcmlab/shapegen.hpp"

namespace glcmlab {

enum class ClassifierKind { knn, svm };

std::string_view classifier_name(ClassifierKind kind);

struct BenchConfig {
  int knn_k = 3;
  double svm_lambda = 0.01;
  int svm_epochs = 100;
  int glcm_distance = 1;
  std::uint64_t seed = 42;
  int jobs = 1;  // sweep-level parallelism; each cell stays single-threaded
};

// One sweep cell. Accuracy, op counts and predictions are pure functions of
// (dataset, config); only the *_ms fields vary between runs.
struct BenchResult {
  ClassifierKind classifier;
  FeatureCombo combo;
  double accuracy = 0.0;
  double extract_ms = 0.0;
  double train_ms = 0.0;
  double predict_ms = 0.0;
  std::uint64_t glcm_cell_ops = 0;  // pair visits summed over samples and angles
  int n_train = 0;
  int n_test = 0;
  std::uint64_t seed = 0;
};

BenchResult run_cell(const LabeledDataset& dataset, const FeatureCombo& combo,
                     ClassifierKind classifier, const BenchConfig& config);

struct SweepSummary {
  struct Group {
    ClassifierKind classifier;
    int combo_size;
    double mean_accuracy;
    int cells;
  };

  std::vector<BenchResult> cells;  // enumeration order, knn before svm
  std::vector<Group> groups;       // knn 2, knn 3, svm 2, svm 3
};

// 20 combos x 2 classifiers. Cell order in the result is fixed regardless of
// config.jobs.
SweepSummary sweep(const LabeledDataset& dataset, const BenchConfig& config);

struct ProbeRow {
  int side;
  double median_ms;          // one 4-angle GLCM build on an NxN image
  std::uint64_t cell_ops;    // counted pair visits for that build
};

// Builds 4-angle GLCMs over seeded random images per side, timing with a
// discarded warm-up and a median over trials. Requires >= 3 sides, each
// >= 16, and trials >= 5.
std::vector<ProbeRow> complexity_probe(std::span<const int> sides, int levels, int trials,
                                       std::uint64_t seed);

// Closed-form in-bounds pair count for one 4-angle build on a WxH image.
std::uint64_t expected_cell_ops(int width, int height, int distance = 1);

void write_cells_csv(const SweepSummary& summary, std::ostream& out);
void write_summary_csv(const SweepSummary& summary, std::ostream& out);
// Ranking by accuracy desc, then extract+predict time asc.
void write_ranking(const SweepSummary& summary, std::ostream& out);
void write_probe_csv(std::span<const ProbeRow> rows, std::ostream& out);

// cells.csv, summary.csv and ranking.txt under dir.
void emit_report(const SweepSummary& summary, const std::filesystem::path& dir);

}  // namespace glcmlab
