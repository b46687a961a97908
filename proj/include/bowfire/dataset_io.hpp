#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "bowfire/eval.hpp"

namespace bowfire::io {

/// Images directory plus optional ground-truth directory; masks pair with
/// images by filename stem, ignoring the extension.
struct DatasetLayout {
  std::filesystem::path images_dir;
  std::optional<std::filesystem::path> masks_dir;
  DatasetTag tag = DatasetTag::Fire;
};

/// Two directories of fixed-size training patches.
struct TrainingLayout {
  std::filesystem::path fire_dir;
  std::filesystem::path not_fire_dir;
  int patch_size = 50;  ///< 0 disables the size check
};

struct TrainingPatches {
  std::vector<ImageRGB> fire;
  std::vector<ImageRGB> not_fire;
};

/// Raster files (png, ppm, jpg, jpeg; case-insensitive) sorted by name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// Pairs masks up front so a missing fire mask fails before any work starts.
/// Non-fire images without a mask get an all-negative ground truth. Images
/// and masks are decoded lazily by `Dataset::load`.
Dataset open_dataset(const DatasetLayout& layout);

/// Throws TrainingError for an empty class directory or a patch of the
/// wrong size, IoError for undecodable files; messages name the file.
TrainingPatches load_training(const TrainingLayout& layout);

} // namespace bowfire::io
