#include "glcmlab/dataset_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "glcmlab/pgm.hpp"

namespace glcmlab {

namespace {

std::string sample_filename(ShapeClass shape, int index_in_class) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%05d.pgm", std::string(shape_name(shape)).c_str(),
                index_in_class);
  return buf;
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

}  // namespace

void export_dataset(const LabeledDataset& dataset, const std::filesystem::path& dir) {
  if (dataset.train.empty() || dataset.test.empty()) {
    throw std::invalid_argument("dataset must be split before export");
  }
  std::filesystem::create_directories(dir);

  std::vector<char> split_of(dataset.images.size(), '?');
  for (int i : dataset.train) split_of[i] = 't';
  for (int i : dataset.test) split_of[i] = 'e';

  std::ofstream manifest(dir / kManifestName, std::ios::trunc);
  if (!manifest) {
    throw std::runtime_error("cannot write " + (dir / kManifestName).string());
  }
  const DatasetConfig& cfg = dataset.config;
  manifest << "# seed=" << cfg.seed << '\n'
           << "# n_per_class=" << cfg.n_per_class << '\n'
           << "# side=" << cfg.side << '\n'
           << "# levels=" << cfg.levels << '\n'
           << "# noise_sigma=" << cfg.noise_sigma << '\n'
           << "# train_fraction=" << cfg.train_fraction << '\n'
           << "filename,label,split\n";

  std::map<int, int> index_in_class;
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    const int label = dataset.labels[i];
    const std::string name = sample_filename(static_cast<ShapeClass>(label),
                                             index_in_class[label]++);
    const GrayImage& image = dataset.images[i];
    write_pgm_file(image, dir / name);
    manifest << name << ',' << label << ',' << (split_of[i] == 't' ? "train" : "test") << '\n';
  }
  if (!manifest) {
    throw std::runtime_error("short write to " + (dir / kManifestName).string());
  }
}

LabeledDataset import_dataset(const std::filesystem::path& dir) {
  const auto manifest_path = dir / kManifestName;
  std::ifstream manifest(manifest_path);
  if (!manifest) {
    throw std::runtime_error("cannot open " + manifest_path.string());
  }

  LabeledDataset dataset;
  dataset.config.levels = 256;  // plain 8-bit PGMs unless the manifest says otherwise
  dataset.config.n_per_class = 0;

  std::string line;
  bool header_seen = false;
  while (std::getline(manifest, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream kv(line.substr(1));
      std::string entry;
      kv >> entry;
      const std::size_t eq = entry.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = entry.substr(0, eq);
      const std::string value = entry.substr(eq + 1);
      if (key == "seed") dataset.config.seed = std::stoull(value);
      else if (key == "n_per_class") dataset.config.n_per_class = std::stoi(value);
      else if (key == "side") dataset.config.side = std::stoi(value);
      else if (key == "levels") dataset.config.levels = std::stoi(value);
      else if (key == "noise_sigma") dataset.config.noise_sigma = std::stod(value);
      else if (key == "train_fraction") dataset.config.train_fraction = std::stod(value);
      continue;
    }
    if (!header_seen) {
      if (line != "filename,label,split") {
        throw std::runtime_error(manifest_path.string() +
                                 ": expected header \"filename,label,split\", got \"" + line +
                                 "\"");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw std::runtime_error(manifest_path.string() + ": malformed row \"" + line + "\"");
    }
    GrayImage image = read_pgm_file(dir / fields[0]);
    if (dataset.config.levels < 256) {
      image = image.with_levels(dataset.config.levels);
    }
    const int index = static_cast<int>(dataset.images.size());
    dataset.images.push_back(std::move(image));
    dataset.labels.push_back(std::stoi(fields[1]));
    if (fields[2] == "train") {
      dataset.train.push_back(index);
    } else if (fields[2] == "test") {
      dataset.test.push_back(index);
    } else {
      throw std::runtime_error(manifest_path.string() + ": unknown split \"" + fields[2] + "\"");
    }
  }
  if (dataset.images.empty()) {
    throw std::runtime_error(manifest_path.string() + ": no samples listed");
  }
  dataset.config.side = dataset.images.front().width();
  if (dataset.config.n_per_class == 0) {
    dataset.config.n_per_class =
        static_cast<int>(dataset.images.size()) / std::max(1, dataset.n_classes());
  }
  return dataset;
}

}  // namespace glcmlab
