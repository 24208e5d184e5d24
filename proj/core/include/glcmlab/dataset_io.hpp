#pragma once

#include <filesystem>

#include "glcmlab/shapegen.hpp"

namespace glcmlab {

// On-disk dataset layout: one PGM per sample named <class>_<index>.pgm
// (index within the class, zero-padded) plus manifest.csv with
// "filename,label,split" rows in sample order. Leading "# key=value" comment
// lines snapshot the generation config; in particular "levels" lets the
// importer restore the true quantization of the 8-bit PGM payload.

inline constexpr const char* kManifestName = "manifest.csv";

// Requires a split dataset (every manifest row names its split).
void export_dataset(const LabeledDataset& dataset, const std::filesystem::path& dir);

LabeledDataset import_dataset(const std::filesystem::path& dir);

}  // namespace glcmlab
