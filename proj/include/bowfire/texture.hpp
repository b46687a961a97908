#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bowfire/color_classifier.hpp"
#include "bowfire/imaging.hpp"
#include "bowfire/superpixel.hpp"

namespace bowfire {

/// 58 uniform-pattern bins (ascending code order) plus one shared
/// non-uniform bin.
inline constexpr int kLbpBins = 59;

/// Tag recorded in model files for the neighbor reading order below.
inline constexpr std::string_view kNeighborOrder = "clockwise-top-left";

using LbpHistogram = Eigen::Matrix<double, 1, kLbpBins>;
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, kLbpBins, Eigen::RowMajor>;

/// 3x3 luma neighborhood in row-major order; index 4 is the center.
using Neighborhood = std::array<std::uint8_t, 9>;

/// Neighbors are read clockwise from the top-left; the first one read is
/// the most significant bit. A bit is set iff the neighbor is strictly
/// greater than the center.
std::uint8_t lbp_code(const Neighborhood& n);

/// At most two 0/1 transitions in the circular 8-bit string.
constexpr bool is_uniform(std::uint8_t code) {
  const auto rotated = static_cast<std::uint8_t>((code >> 1) | (code << 7));
  const auto diff = static_cast<unsigned>(code ^ rotated);
  int transitions = 0;
  for (unsigned d = diff; d != 0; d &= d - 1) ++transitions;
  return transitions <= 2;
}

/// Histogram bin of every code.
const std::array<std::uint8_t, 256>& uniform_bin_table();

/// LBP code at every pixel, borders replicated.
Plane<std::uint8_t> lbp_codes(const Plane<std::uint8_t>& luma);

/// L1-normalized uniform-pattern histogram of the codes at `pixels`
/// (row-major indices into `codes`).
LbpHistogram region_histogram(const Plane<std::uint8_t>& codes, std::span<const int> pixels);

/// One histogram per superpixel, indexed by region id.
std::vector<LbpHistogram> extract_features(const ImageRGB& img, const SuperpixelPartition& part);

/// Histogram of a whole image treated as a single region (training patches).
LbpHistogram image_histogram(const ImageRGB& img);

/// Sum of absolute differences between `query` and every row of `training`.
template <typename Derived>
Eigen::VectorXd l1_distances(const Eigen::MatrixBase<Derived>& training,
                             const LbpHistogram& query) {
  return (training.rowwise() - query).cwiseAbs().rowwise().sum();
}

/// Labeled LBP histograms for KNN with Manhattan distance.
class TextureModel {
public:
  /// Throws ParameterError unless k is odd and 1 <= k <= rows, and
  /// TrainingError unless both classes are present.
  TextureModel(FeatureMatrix features, std::vector<Label> labels, int k);

  int k() const { return k_; }
  Eigen::Index size() const { return features_.rows(); }
  const FeatureMatrix& features() const { return features_; }
  const std::vector<Label>& labels() const { return labels_; }

private:
  FeatureMatrix features_;
  std::vector<Label> labels_;
  int k_;
};

/// Majority label of the k nearest training rows; distance ties at the
/// k-th rank go to the lower training index.
Label classify_feature(const TextureModel& model, const LbpHistogram& v);

/// Labels every member pixel of each fire-classified region.
BinaryMask classify_regions(const TextureModel& model, const ImageRGB& img,
                            const SuperpixelPartition& part);

BinaryMask classify_image_texture(const TextureModel& model, const ImageRGB& img,
                                  const SlicParams& params);

} // namespace bowfire
