#include "glcmlab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "glcmlab/classify.hpp"
#include "glcmlab/rng.hpp"

namespace glcmlab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string_view classifier_name(ClassifierKind kind) {
  return kind == ClassifierKind::knn ? "knn" : "svm";
}

BenchResult run_cell(const LabeledDataset& dataset, const FeatureCombo& combo,
                     ClassifierKind classifier, const BenchConfig& config) {
  if (dataset.train.empty() || dataset.test.empty()) {
    throw std::invalid_argument("dataset has no train/test split");
  }

  BenchResult result{classifier, combo};
  result.n_train = static_cast<int>(dataset.train.size());
  result.n_test = static_cast<int>(dataset.test.size());
  result.seed = config.seed;

  try {
    // Extraction phase: every sample, timed and op-counted.
    const auto t_extract = Clock::now();
    ExtractStats stats;
    std::vector<std::vector<double>> rows;
    rows.reserve(dataset.images.size());
    for (const GrayImage& image : dataset.images) {
      rows.push_back(extract_features(image, combo, config.glcm_distance, &stats).values);
    }
    result.extract_ms = ms_since(t_extract);
    result.glcm_cell_ops = stats.pair_visits;

    std::vector<std::vector<double>> train_rows;
    std::vector<int> train_labels;
    train_rows.reserve(dataset.train.size());
    for (int i : dataset.train) {
      train_rows.push_back(rows[i]);
      train_labels.push_back(dataset.labels[i]);
    }

    // Training phase, standardizer included (fitted on train only).
    const auto t_train = Clock::now();
    const Standardizer standardizer = Standardizer::fit(train_rows);
    train_rows = standardizer.transform_all(train_rows);

    KnnModel knn;
    SvmModel svm;
    if (classifier == ClassifierKind::knn) {
      knn = knn_fit(std::move(train_rows), std::move(train_labels), config.knn_k);
    } else {
      svm = svm_train_ovr(train_rows, train_labels, dataset.n_classes(), config.svm_lambda,
                          config.svm_epochs, config.seed);
    }
    result.train_ms = ms_since(t_train);

    const auto t_predict = Clock::now();
    int correct = 0;
    for (int i : dataset.test) {
      const std::vector<double> query = standardizer.transform(rows[i]);
      const int predicted = classifier == ClassifierKind::knn ? knn_predict(knn, query)
                                                              : svm_predict(svm, query);
      if (predicted == dataset.labels[i]) ++correct;
    }
    result.predict_ms = ms_since(t_predict);
    result.accuracy = static_cast<double>(correct) / result.n_test;
  } catch (const std::exception& e) {
    throw std::runtime_error("cell " + std::string(classifier_name(classifier)) + "/" +
                             combo.name() + ": " + e.what());
  }
  return result;
}

SweepSummary sweep(const LabeledDataset& dataset, const BenchConfig& config) {
  const std::vector<FeatureCombo> combos = enumerate_combos();

  struct Cell {
    FeatureCombo combo;
    ClassifierKind classifier;
  };
  std::vector<Cell> plan;
  for (const FeatureCombo& combo : combos) {
    plan.push_back({combo, ClassifierKind::knn});
    plan.push_back({combo, ClassifierKind::svm});
  }

  SweepSummary summary;
  summary.cells.resize(plan.size(), BenchResult{ClassifierKind::knn, combos.front()});

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) {
      summary.cells[i] = run_cell(dataset, plan[i].combo, plan[i].classifier, config);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= plan.size() || failed.load()) break;
          try {
            summary.cells[i] = run_cell(dataset, plan[i].combo, plan[i].classifier, config);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) first_error = e.what();
            break;
          }
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
    if (failed.load()) throw std::runtime_error(first_error);
  }

  for (ClassifierKind kind : {ClassifierKind::knn, ClassifierKind::svm}) {
    for (int size : {2, 3}) {
      double sum = 0.0;
      int count = 0;
      for (const BenchResult& cell : summary.cells) {
        if (cell.classifier == kind && static_cast<int>(cell.combo.size()) == size) {
          sum += cell.accuracy;
          ++count;
        }
      }
      summary.groups.push_back({kind, size, sum / count, count});
    }
  }
  return summary;
}

std::uint64_t expected_cell_ops(int width, int height, int distance) {
  const std::uint64_t w = width;
  const std::uint64_t h = height;
  const std::uint64_t d = distance;
  if (w <= d && h <= d) return 0;
  const std::uint64_t horiz = w > d ? h * (w - d) : 0;          // 0 degrees
  const std::uint64_t vert = h > d ? w * (h - d) : 0;           // 90 degrees
  const std::uint64_t diag = (w > d && h > d) ? (w - d) * (h - d) : 0;  // 45 and 135
  return horiz + vert + 2 * diag;
}

std::vector<ProbeRow> complexity_probe(std::span<const int> sides, int levels, int trials,
                                       std::uint64_t seed) {
  if (sides.size() < 3) {
    throw std::invalid_argument("complexity probe needs at least 3 side lengths");
  }
  for (int side : sides) {
    if (side < 16) {
      throw std::invalid_argument("probe sides must be >= 16, got " + std::to_string(side));
    }
  }
  if (trials < 5) {
    throw std::invalid_argument("probe needs at least 5 trials, got " + std::to_string(trials));
  }

  std::vector<ProbeRow> rows;
  for (std::size_t s = 0; s < sides.size(); ++s) {
    const int side = sides[s];
    // Batch repeats so each timed trial covers a few million pair visits;
    // single builds on small images are below timer noise.
    const std::uint64_t ops_per_build = expected_cell_ops(side, side);
    const int repeats =
        static_cast<int>(std::max<std::uint64_t>(1, 4'000'000 / std::max<std::uint64_t>(1, ops_per_build)));

    std::vector<double> times_ms;
    std::uint64_t counted_ops = 0;
    for (int trial = -1; trial < trials; ++trial) {  // trial -1 is the discarded warm-up
      auto stream = rng::Stream::for_substream(seed + s, static_cast<std::uint64_t>(trial + 1));
      std::vector<std::uint8_t> pixels(static_cast<std::size_t>(side) * side);
      for (auto& p : pixels) p = static_cast<std::uint8_t>(stream.next_below(levels));
      const GrayImage image(side, side, levels, std::move(pixels));

      const auto start = Clock::now();
      std::uint64_t ops = 0;
      for (int rep = 0; rep < repeats; ++rep) {
        ops = 0;
        for (const AngleOffset& offset : standard_offsets()) {
          ops += compute_glcm(image, offset).visited_pairs();
        }
      }
      const double elapsed = ms_since(start);
      if (trial >= 0) {
        times_ms.push_back(elapsed / repeats);
        counted_ops = ops;
      }
    }
    std::sort(times_ms.begin(), times_ms.end());
    rows.push_back(ProbeRow{side, times_ms[times_ms.size() / 2], counted_ops});
  }
  return rows;
}

void write_cells_csv(const SweepSummary& summary, std::ostream& out) {
  out << "classifier,combo_size,combo,n_train,n_test,accuracy,extract_ms,train_ms,predict_ms,"
         "glcm_cell_ops,seed\n";
  for (const BenchResult& cell : summary.cells) {
    out << classifier_name(cell.classifier) << ',' << cell.combo.size() << ',' << cell.combo.name()
        << ',' << cell.n_train << ',' << cell.n_test << ',' << format_double(cell.accuracy) << ','
        << format_ms(cell.extract_ms) << ',' << format_ms(cell.train_ms) << ','
        << format_ms(cell.predict_ms) << ',' << cell.glcm_cell_ops << ',' << cell.seed << '\n';
  }
}

void write_summary_csv(const SweepSummary& summary, std::ostream& out) {
  out << "classifier,combo_size,mean_accuracy,cells\n";
  for (const SweepSummary::Group& group : summary.groups) {
    out << classifier_name(group.classifier) << ',' << group.combo_size << ','
        << format_double(group.mean_accuracy) << ',' << group.cells << '\n';
  }
}

void write_ranking(const SweepSummary& summary, std::ostream& out) {
  std::vector<const BenchResult*> order;
  for (const BenchResult& cell : summary.cells) order.push_back(&cell);
  std::stable_sort(order.begin(), order.end(), [](const BenchResult* a, const BenchResult* b) {
    if (a->accuracy != b->accuracy) return a->accuracy > b->accuracy;
    return a->extract_ms + a->predict_ms < b->extract_ms + b->predict_ms;
  });

  out << "# accuracy/cost ranking: accuracy desc, then extract+predict ms asc\n";
  char buf[160];
  int rank = 1;
  for (const BenchResult* cell : order) {
    std::snprintf(buf, sizeof(buf), "%2d  %-4s %-34s accuracy=%.6f  extract+predict_ms=%.3f",
                  rank++, std::string(classifier_name(cell->classifier)).c_str(),
                  cell->combo.name().c_str(), cell->accuracy,
                  cell->extract_ms + cell->predict_ms);
    out << buf << '\n';
  }
}

void write_probe_csv(std::span<const ProbeRow> rows, std::ostream& out) {
  out << "side,median_ms,cell_ops\n";
  for (const ProbeRow& row : rows) {
    out << row.side << ',' << format_ms(row.median_ms) << ',' << row.cell_ops << '\n';
  }
}

void emit_report(const SweepSummary& summary, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  auto cells = open("cells.csv");
  write_cells_csv(summary, cells);
  auto totals = open("summary.csv");
  write_summary_csv(summary, totals);
  auto ranking = open("ranking.txt");
  write_ranking(summary, ranking);
}

}  // namespace glcmlab
