// glcmlab: synthetic shape datasets, co-occurrence texture features, and the
// 20-combo K-NN/SVM accuracy-vs-cost sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glcmlab/bench.hpp"
#include "glcmlab/classify.hpp"
#include "glcmlab/dataset_io.hpp"
#include "glcmlab/glcm.hpp"
#include "glcmlab/pgm.hpp"
#include "glcmlab/shapegen.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 data/validation, 3 internal.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 42;
  int images_per_class = 1000;
  int side = 64;
  int levels = 8;
  int distance = 1;
  double noise_sigma = 0.0;
  double train_fraction = 0.9;
  int knn_k = 3;
  double svm_lambda = 0.01;
  int svm_epochs = 100;
  int jobs = 1;
};

void print_effective_config(const RunConfig& c) {
  std::ostringstream out;
  out << "config: seed=" << c.seed << " images-per-class=" << c.images_per_class
      << " side=" << c.side << " levels=" << c.levels << " distance=" << c.distance
      << " noise-sigma=" << c.noise_sigma << " train-fraction=" << c.train_fraction
      << " knn-k=" << c.knn_k << " svm-lambda=" << c.svm_lambda
      << " svm-epochs=" << c.svm_epochs << " jobs=" << c.jobs;
  std::cerr << out.str() << '\n';
}

glcmlab::BenchConfig bench_config(const RunConfig& c) {
  glcmlab::BenchConfig b;
  b.knn_k = c.knn_k;
  b.svm_lambda = c.svm_lambda;
  b.svm_epochs = c.svm_epochs;
  b.glcm_distance = c.distance;
  b.seed = c.seed;
  b.jobs = c.jobs;
  return b;
}

// The resize/quantize pre-processing stage: normalizes imported images to the
// configured working geometry before extraction.
void prepare_images(glcmlab::LabeledDataset& dataset, const RunConfig& c) {
  for (glcmlab::GrayImage& image : dataset.images) {
    if (image.width() != c.side || image.height() != c.side) {
      image = glcmlab::resize_nearest(image, c.side, c.side);
    }
    if (image.levels() > c.levels) {
      image = glcmlab::quantize(image, c.levels);
    }
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int cmd_generate(const RunConfig& config, const std::string& out_dir) {
  auto dataset = glcmlab::generate_dataset(config.images_per_class, config.side, config.levels,
                                           config.noise_sigma, config.seed);
  dataset = glcmlab::split_dataset(std::move(dataset), config.train_fraction, config.seed);
  glcmlab::export_dataset(dataset, out_dir);
  std::cerr << "wrote " << dataset.images.size() << " images and " << glcmlab::kManifestName
            << " to " << out_dir << '\n';
  return kExitOk;
}

int cmd_extract(const RunConfig& config, const std::string& data_dir, const std::string& combo_text,
                const std::string& out_path) {
  glcmlab::FeatureCombo combo = [&] {
    try {
      return glcmlab::FeatureCombo::parse(combo_text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  auto dataset = glcmlab::import_dataset(data_dir);
  prepare_images(dataset, config);

  std::vector<glcmlab::FeatureVector> vectors;
  vectors.reserve(dataset.images.size());
  for (const glcmlab::GrayImage& image : dataset.images) {
    vectors.push_back(glcmlab::extract_features(image, combo, config.distance));
  }

  if (out_path.empty()) {
    glcmlab::write_feature_csv(std::cout, vectors, dataset.labels);
  } else {
    auto out = open_output(out_path);
    glcmlab::write_feature_csv(out, vectors, dataset.labels);
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const std::string& data_dir, const std::string& out_dir) {
  auto dataset = glcmlab::import_dataset(data_dir);
  prepare_images(dataset, config);
  const auto summary = glcmlab::sweep(dataset, bench_config(config));
  glcmlab::emit_report(summary, out_dir);
  std::cerr << "wrote cells.csv, summary.csv, ranking.txt to " << out_dir << '\n';
  return kExitOk;
}

int cmd_probe(const RunConfig& config, const std::vector<int>& sides, int trials,
              const std::string& out_path) {
  if (sides.size() < 3) {
    throw UsageError("--sides needs at least 3 side lengths");
  }
  const auto rows = glcmlab::complexity_probe(sides, config.levels, trials, config.seed);
  if (out_path.empty()) {
    glcmlab::write_probe_csv(rows, std::cout);
  } else {
    auto out = open_output(out_path);
    glcmlab::write_probe_csv(rows, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;

  CLI::App app{
      "glcmlab: co-occurrence texture features over synthetic shape images.\n"
      "Features: energy, contrast, homogeneity, entropy, correlation, computed\n"
      "at the fixed angle set 0, 45, 90, 135 degrees (distance configurable)."};
  app.require_subcommand(1);
  app.fallthrough();  // lets the shared flags above appear after the subcommand
  app.set_config("--config", "", "Config file with key=value lines (flags take precedence)");

  app.add_option("--seed", config.seed, "Master seed for generation, splits and training")
      ->capture_default_str();
  app.add_option("--images-per-class", config.images_per_class, "Samples per shape class")
      ->check(CLI::Range(10, 1000000))
      ->capture_default_str();
  app.add_option("--side", config.side, "Working image side in pixels")
      ->check(CLI::Range(8, 4096))
      ->capture_default_str();
  app.add_option("--levels", config.levels, "Gray levels L used for the co-occurrence matrix")
      ->check(CLI::Range(2, 256))
      ->capture_default_str();
  app.add_option("--distance", config.distance, "Pixel-pair distance d")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--noise-sigma", config.noise_sigma, "Gaussian pixel noise in gray levels")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--train-fraction", config.train_fraction, "Training split fraction")
      ->check(CLI::Range(0.01, 0.99))
      ->capture_default_str();
  app.add_option("--knn-k", config.knn_k, "K-NN neighbor count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--svm-lambda", config.svm_lambda, "SVM regularization strength")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--svm-epochs", config.svm_epochs, "SVM training epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", config.jobs, "Concurrent sweep cells")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  std::string out_dir;
  std::string out_path;
  std::string data_dir;
  std::string combo_text;
  std::vector<int> sides;
  int trials = 7;

  auto* generate = app.add_subcommand(
      "generate", "Render a rotated/rescaled triangle-square-circle dataset as PGM files");
  generate->add_option("--out", out_dir, "Output dataset directory")->required();

  auto* extract = app.add_subcommand(
      "extract", "Write the per-sample feature CSV for one feature combination");
  extract->add_option("--data", data_dir, "Dataset directory (PGMs + manifest.csv)")->required();
  extract
      ->add_option("--combo", combo_text,
                   "Feature combination, e.g. energy+homogeneity or contrast+entropy+correlation")
      ->required();
  extract->add_option("--out", out_path, "Output CSV path (default: stdout)");

  auto* sweep = app.add_subcommand(
      "sweep", "Run all 20 feature combinations x {knn, svm} and write the reports");
  sweep->add_option("--data", data_dir, "Dataset directory (PGMs + manifest.csv)")->required();
  sweep->add_option("--out", out_dir, "Report output directory")->required();

  auto* probe = app.add_subcommand(
      "probe", "Measure co-occurrence build time and exact pair counts against image side");
  probe->add_option("--sides", sides, "Image side lengths, e.g. --sides 64 128 256")
      ->delimiter(',');
  probe->add_option("--trials", trials, "Timing trials per side (>= 5)")->check(CLI::Range(5, 1000));
  probe->add_option("--out", out_path, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  print_effective_config(config);
  try {
    if (generate->parsed()) return cmd_generate(config, out_dir);
    if (extract->parsed()) return cmd_extract(config, data_dir, combo_text, out_path);
    if (sweep->parsed()) return cmd_sweep(config, data_dir, out_dir);
    if (probe->parsed()) return cmd_probe(config, sides, trials, out_path);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
