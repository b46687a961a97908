#include "bowfire/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>

#include "bowfire/image_io.hpp"

namespace bowfire::io {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::ranges::transform(s, s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_raster(const fs::path& p) {
  const auto ext = lower(p.extension().string());
  return ext == ".png" || ext == ".ppm" || ext == ".jpg" || ext == ".jpeg";
}

std::vector<ImageRGB> load_patches(const fs::path& dir, int patch_size) {
  const auto files = list_images(dir);
  if (files.empty()) throw TrainingError("no training images in '" + dir.string() + "'");
  std::vector<ImageRGB> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    ImageRGB img = read_image(f);
    if (patch_size > 0 && (img.width() != patch_size || img.height() != patch_size))
      throw TrainingError("training patch '" + f.string() + "' is " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                          ", expected " + std::to_string(patch_size) + "x" +
                          std::to_string(patch_size));
    out.push_back(std::move(img));
  }
  return out;
}

} // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: '" + dir.string() + "'");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && is_raster(entry.path())) out.push_back(entry.path());
  std::ranges::sort(out);
  return out;
}

Dataset open_dataset(const DatasetLayout& layout) {
  const auto images = list_images(layout.images_dir);
  std::map<std::string, fs::path> masks_by_stem;
  if (layout.masks_dir)
    for (const auto& m : list_images(*layout.masks_dir))
      masks_by_stem.emplace(m.stem().string(), m);

  auto pairs = std::make_shared<std::vector<std::pair<fs::path, std::optional<fs::path>>>>();
  Dataset ds;
  ds.tag = layout.tag;
  for (const auto& img : images) {
    std::optional<fs::path> mask;
    if (const auto it = masks_by_stem.find(img.stem().string()); it != masks_by_stem.end())
      mask = it->second;
    else if (layout.tag != DatasetTag::NonFire)
      throw IoError("no ground-truth mask for '" + img.string() + "'");
    pairs->emplace_back(img, mask);
    ds.names.push_back(img.filename().string());
  }
  ds.load = [pairs](std::size_t i) {
    const auto& [img_path, mask_path] = (*pairs)[i];
    ImageRGB image = read_image(img_path);
    BinaryMask truth = mask_path ? read_mask(*mask_path)
                                 : BinaryMask(image.width(), image.height(), false);
    return Sample{std::move(image), std::move(truth)};
  };
  return ds;
}

TrainingPatches load_training(const TrainingLayout& layout) {
  return {load_patches(layout.fire_dir, layout.patch_size),
          load_patches(layout.not_fire_dir, layout.patch_size)};
}

} // namespace bowfire::io
