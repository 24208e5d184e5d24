#include "glcmlab/pgm.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace glcmlab {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string next_token(const char* what) {
    skip_separators();
    std::string token;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) {
      token.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (token.empty()) {
      throw std::runtime_error(std::string("pgm: truncated header, missing ") + what);
    }
    return token;
  }

  int next_int(const char* what, int max_value) {
    const std::string token = next_token(what);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < 0) {
      throw std::runtime_error(std::string("pgm: bad ") + what + " token \"" + token + "\"");
    }
    if (value > max_value) {
      if (std::string(what) == "maxval") {
        throw std::runtime_error("pgm: unsupported maxval " + token + " (must be <= 255)");
      }
      throw std::runtime_error(std::string("pgm: ") + what + " " + token + " out of range");
    }
    return static_cast<int>(value);
  }

  // Raster starts after exactly one whitespace byte following maxval.
  std::span<const std::uint8_t> raster() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw std::runtime_error("pgm: missing whitespace before raster");
    }
    ++pos_;
    return bytes_.subspan(pos_);
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  HeaderScanner scanner(bytes);
  const std::string magic = scanner.next_token("magic");
  if (magic != "P5") {
    throw std::runtime_error("pgm: bad magic token \"" + magic + "\", expected P5");
  }
  const int width = scanner.next_int("width", 1 << 20);
  const int height = scanner.next_int("height", 1 << 20);
  scanner.next_int("maxval", 255);

  const auto raster = scanner.raster();
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (raster.size() < expected) {
    throw std::runtime_error("pgm: raster has " + std::to_string(raster.size()) +
                             " bytes, header promises " + std::to_string(expected));
  }
  return GrayImage(width, height, 256,
                   std::vector<std::uint8_t>(raster.begin(), raster.begin() + expected));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
  if (image.levels() > 256) {
    throw std::invalid_argument("pgm: cannot encode more than 256 levels");
  }
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n" +
                             std::to_string(image.levels() - 1) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("pgm: cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return read_pgm(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_pgm_file(const GrayImage& image, const std::filesystem::path& path) {
  const auto bytes = write_pgm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("pgm: cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("pgm: short write to " + path.string());
  }
}

}  // namespace glcmlab
