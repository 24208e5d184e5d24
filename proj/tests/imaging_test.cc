#include <gtest/gtest.h>

#include <map>
#include <stdexcept>

#include "glcmlab/gray_image.hpp"
#include "glcmlab/pgm.hpp"
#include "glcmlab/rng.hpp"

namespace glcmlab {
namespace {

GrayImage random_image(int w, int h, int levels, std::uint64_t seed) {
  rng::Stream stream(seed);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
  for (auto& p : pixels) p = static_cast<std::uint8_t>(stream.next_below(levels));
  return GrayImage(w, h, levels, std::move(pixels));
}

TEST(GrayImage, RejectsInvalidConstruction) {
  EXPECT_THROW(GrayImage(1, 1, 256, {0}), std::invalid_argument);
  EXPECT_THROW(GrayImage(2, 2, 256, {0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(GrayImage(2, 2, 1, {0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(GrayImage(2, 2, 4, {0, 1, 2, 4}), std::invalid_argument);
}

TEST(Pgm, DecodesMinimalP5) {
  const std::string data = "P5\n2 2\n255\n";
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  bytes.insert(bytes.end(), {0, 255, 255, 0});
  const GrayImage image = read_pgm(bytes);
  EXPECT_EQ(image.width(), 2);
  EXPECT_EQ(image.height(), 2);
  EXPECT_EQ(image.levels(), 256);
  EXPECT_EQ(image.at(0, 0), 0);
  EXPECT_EQ(image.at(0, 1), 255);
  EXPECT_EQ(image.at(1, 0), 255);
  EXPECT_EQ(image.at(1, 1), 0);
}

TEST(Pgm, AcceptsCommentsInHeader) {
  const std::string data = "P5\n# a comment\n2 2\n# another\n255\n";
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  bytes.insert(bytes.end(), {1, 2, 3, 4});
  EXPECT_EQ(read_pgm(bytes).at(1, 1), 4);
}

TEST(Pgm, RejectsWideMaxval) {
  const std::string data = "P5\n2 2\n65535\n";
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  bytes.insert(bytes.end(), {0, 0, 0, 0, 0, 0, 0, 0});
  try {
    read_pgm(bytes);
    FAIL() << "expected maxval rejection";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported maxval"), std::string::npos);
  }
}

TEST(Pgm, RejectsTruncatedRaster) {
  const std::string data = "P5\n4 4\n255\n";
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  bytes.insert(bytes.end(), 12, 7);  // header promises 16
  EXPECT_THROW(read_pgm(bytes), std::runtime_error);
}

TEST(Pgm, RejectsBadMagicNamingToken) {
  const std::string data = "P6\n2 2\n255\n####";
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  try {
    read_pgm(bytes);
    FAIL() << "expected magic rejection";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("P6"), std::string::npos);
  }
}

TEST(Pgm, WriteProducesRasterInOrder) {
  const GrayImage image(2, 2, 256, {0, 1, 2, 3});
  const auto bytes = write_pgm(image);
  const std::string header = "P5\n2 2\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 4);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + header.size()), header);
  EXPECT_EQ(bytes[header.size() + 0], 0);
  EXPECT_EQ(bytes[header.size() + 1], 1);
  EXPECT_EQ(bytes[header.size() + 2], 2);
  EXPECT_EQ(bytes[header.size() + 3], 3);
}

TEST(Pgm, RoundTripIsIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage image = random_image(3 + seed % 9, 2 + seed % 7, 256, seed);
    EXPECT_EQ(read_pgm(write_pgm(image)), image);
  }
}

TEST(Resize, IdentityWhenDimensionsMatch) {
  const GrayImage image = random_image(6, 4, 8, 1);
  EXPECT_EQ(resize_nearest(image, 6, 4), image);
}

TEST(Resize, HalvingSamplesEvenRowsAndCols) {
  // 4x4 with pixel value = 4*r + c at 16 levels; halving keeps rows/cols {0, 2}.
  std::vector<std::uint8_t> pixels(16);
  for (int i = 0; i < 16; ++i) pixels[i] = static_cast<std::uint8_t>(i);
  const GrayImage image(4, 4, 16, pixels);
  const GrayImage half = resize_nearest(image, 2, 2);
  EXPECT_EQ(half.at(0, 0), 0);
  EXPECT_EQ(half.at(0, 1), 2);
  EXPECT_EQ(half.at(1, 0), 8);
  EXPECT_EQ(half.at(1, 1), 10);
}

TEST(Resize, UpDownRoundTripReproducesOriginal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GrayImage image = random_image(2, 2, 8, seed);
    EXPECT_EQ(resize_nearest(resize_nearest(image, 4, 4), 2, 2), image);
  }
}

TEST(Resize, OutputValuesComeFromInput) {
  const GrayImage image = random_image(7, 5, 8, 99);
  const GrayImage out = resize_nearest(image, 13, 3);
  std::map<int, bool> present;
  for (auto p : image.pixels()) present[p] = true;
  for (auto p : out.pixels()) EXPECT_TRUE(present[p]);
}

TEST(Resize, RejectsTinyTarget) {
  const GrayImage image = random_image(4, 4, 8, 0);
  EXPECT_THROW(resize_nearest(image, 1, 4), std::invalid_argument);
}

TEST(Quantize, IdentityAtSameLevels) {
  const GrayImage image = random_image(5, 5, 256, 7);
  EXPECT_EQ(quantize(image, 256), image);
}

TEST(Quantize, EightLevelExamples) {
  const GrayImage image(2, 2, 256, {255, 128, 0, 32});
  const GrayImage q = quantize(image, 8);
  EXPECT_EQ(q.levels(), 8);
  EXPECT_EQ(q.at(0, 0), 7);  // floor(255*8/256)
  EXPECT_EQ(q.at(0, 1), 4);  // floor(128*8/256)
  EXPECT_EQ(q.at(1, 0), 0);
  EXPECT_EQ(q.at(1, 1), 1);
}

TEST(Quantize, RejectsOutOfRangeTarget) {
  const GrayImage image = random_image(4, 4, 8, 0);
  EXPECT_THROW(quantize(image, 1), std::invalid_argument);
  EXPECT_THROW(quantize(image, 16), std::invalid_argument);
}

TEST(Quantize, MonotoneAndMassPreserving) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GrayImage image = random_image(9, 6, 256, seed);
    const GrayImage q = quantize(image, 8);
    ASSERT_EQ(q.pixels().size(), image.pixels().size());
    for (std::size_t i = 0; i < image.pixels().size(); ++i) {
      for (std::size_t j = 0; j < image.pixels().size(); ++j) {
        if (image.pixels()[i] <= image.pixels()[j]) {
          EXPECT_LE(q.pixels()[i], q.pixels()[j]);
        }
      }
    }
  }
}

}  // namespace
}  // namespace glcmlab
