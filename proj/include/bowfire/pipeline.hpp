#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bowfire/baselines.hpp"
#include "bowfire/color_classifier.hpp"
#include "bowfire/superpixel.hpp"
#include "bowfire/texture.hpp"

namespace bowfire {

struct BowfireModel {
  ColorModel color;
  TextureModel texture;
  SlicParams slic;
};

struct TrainOptions {
  int bins = 32;
  int k = 11;
  SlicParams slic;
};

/// Color model from every pixel of every patch (labeled by its patch) and
/// texture model from one LBP histogram per patch. When there are fewer
/// patches than `k`, k drops to the largest odd value that fits and a note
/// is appended to `warnings`.
BowfireModel train_model(std::span<const ImageRGB> fire_patches,
                         std::span<const ImageRGB> other_patches, const TrainOptions& options,
                         std::vector<std::string>* warnings = nullptr);

enum class DetectionMode { ColorOnly, TextureOnly, Fused };

std::string_view to_string(DetectionMode mode);
std::optional<DetectionMode> parse_mode(std::string_view text);

/// Both branch outputs for one image; `fused` is their intersection.
struct BranchMasks {
  BinaryMask color;
  BinaryMask texture;
  BinaryMask fused;
};

/// Runs the color and texture branches independently and merges them.
BranchMasks detect_branches(const BowfireModel& model, const ImageRGB& img);

BinaryMask detect(const BowfireModel& model, const ImageRGB& img, DetectionMode mode);

/// Every detector the evaluation harness can score. The cluster methods are
/// the clustering step only; the "+texture" variants intersect them with the
/// texture branch the same way the fused mode does for the color branch.
enum class Method {
  ColorOnly,
  TextureOnly,
  Fused,
  RossiCluster,
  RudzCluster,
  RossiClusterTexture,
  RudzClusterTexture,
};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view text);
const std::vector<Method>& all_methods();

/// Detection masks for several methods on one image, sharing the texture
/// branch. Cluster methods that hit DegenerateInput yield an all-false mask
/// and append a note to `warnings` when given.
std::vector<BinaryMask> run_methods(const BowfireModel& model, const ImageRGB& img,
                                    const std::vector<Method>& methods,
                                    std::vector<std::string>* warnings = nullptr);

} // namespace bowfire
