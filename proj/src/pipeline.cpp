#include "bowfire/pipeline.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace bowfire {

namespace {

constexpr std::array<std::pair<DetectionMode, std::string_view>, 3> kModeNames{{
    {DetectionMode::ColorOnly, "color-only"},
    {DetectionMode::TextureOnly, "texture-only"},
    {DetectionMode::Fused, "fused"},
}};

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethodNames{{
    {Method::ColorOnly, "color-only"},
    {Method::TextureOnly, "texture-only"},
    {Method::Fused, "fused"},
    {Method::RossiCluster, "rossi-cluster"},
    {Method::RudzCluster, "rudz-cluster"},
    {Method::RossiClusterTexture, "rossi-cluster+texture"},
    {Method::RudzClusterTexture, "rudz-cluster+texture"},
}};

bool needs_texture(Method m) {
  return m == Method::TextureOnly || m == Method::Fused || m == Method::RossiClusterTexture ||
         m == Method::RudzClusterTexture;
}

bool needs_color(Method m) { return m == Method::ColorOnly || m == Method::Fused; }

} // namespace

BowfireModel train_model(std::span<const ImageRGB> fire_patches,
                         std::span<const ImageRGB> other_patches, const TrainOptions& options,
                         std::vector<std::string>* warnings) {
  std::vector<LabeledPixel> pixels;
  FeatureMatrix features(static_cast<Eigen::Index>(fire_patches.size() + other_patches.size()),
                         kLbpBins);
  std::vector<Label> labels;
  const auto add = [&](std::span<const ImageRGB> patches, Label label) {
    for (const auto& patch : patches) {
      for (Eigen::Index i = 0; i < patch.size(); ++i)
        pixels.push_back({rgb_to_ycbcr(patch.pixel(i)), label});
      features.row(static_cast<Eigen::Index>(labels.size())) = image_histogram(patch);
      labels.push_back(label);
    }
  };
  add(fire_patches, Label::Fire);
  add(other_patches, Label::NotFire);

  int k = options.k;
  const auto n = static_cast<int>(labels.size());
  if (k > n && n > 0) {
    k = n % 2 == 1 ? n : n - 1;
    if (warnings)
      warnings->push_back("only " + std::to_string(n) + " texture samples; using k = " +
                          std::to_string(k) + " instead of " + std::to_string(options.k));
  }
  ColorModel color = train_color(pixels, options.bins);
  TextureModel texture(std::move(features), std::move(labels), k);
  return {std::move(color), std::move(texture), options.slic};
}

std::string_view to_string(DetectionMode mode) {
  for (const auto& [m, name] : kModeNames)
    if (m == mode) return name;
  return "?";
}

std::optional<DetectionMode> parse_mode(std::string_view text) {
  for (const auto& [m, name] : kModeNames)
    if (name == text) return m;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames)
    if (m == method) return name;
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (const auto& [m, name] : kMethodNames)
    if (name == text) return m;
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = [] {
    std::vector<Method> v;
    for (const auto& entry : kMethodNames) v.push_back(entry.first);
    return v;
  }();
  return methods;
}

BranchMasks detect_branches(const BowfireModel& model, const ImageRGB& img) {
  BinaryMask color = classify_image_color(model.color, img);
  BinaryMask texture = classify_image_texture(model.texture, img, model.slic);
  BinaryMask fused = mask_and(color, texture);
  return {std::move(color), std::move(texture), std::move(fused)};
}

BinaryMask detect(const BowfireModel& model, const ImageRGB& img, DetectionMode mode) {
  switch (mode) {
    case DetectionMode::ColorOnly:
      return classify_image_color(model.color, img);
    case DetectionMode::TextureOnly:
      return classify_image_texture(model.texture, img, model.slic);
    case DetectionMode::Fused:
      break;
  }
  return detect_branches(model, img).fused;
}

std::vector<BinaryMask> run_methods(const BowfireModel& model, const ImageRGB& img,
                                    const std::vector<Method>& methods,
                                    std::vector<std::string>* warnings) {
  std::optional<BinaryMask> color, texture;
  if (std::ranges::any_of(methods, needs_color))
    color = classify_image_color(model.color, img);
  if (std::ranges::any_of(methods, needs_texture))
    texture = classify_image_texture(model.texture, img, model.slic);

  const auto cluster = [&](const ClusterSpec& spec, Method m) {
    try {
      return cluster_segment(img, spec);
    } catch (const DegenerateInput& e) {
      if (warnings) warnings->push_back(std::string(to_string(m)) + ": " + e.what());
      return BinaryMask(img.width(), img.height());
    }
  };

  std::vector<BinaryMask> out;
  out.reserve(methods.size());
  for (Method m : methods) {
    switch (m) {
      case Method::ColorOnly: out.push_back(*color); break;
      case Method::TextureOnly: out.push_back(*texture); break;
      case Method::Fused: out.push_back(mask_and(*color, *texture)); break;
      case Method::RossiCluster: out.push_back(cluster(kRossiSpec, m)); break;
      case Method::RudzCluster: out.push_back(cluster(kRudzSpec, m)); break;
      case Method::RossiClusterTexture:
        out.push_back(mask_and(cluster(kRossiSpec, m), *texture));
        break;
      case Method::RudzClusterTexture:
        out.push_back(mask_and(cluster(kRudzSpec, m), *texture));
        break;
    }
  }
  return out;
}

} // namespace bowfire
