#pragma once

#include <vector>

#include "bowfire/imaging.hpp"

namespace bowfire {

struct SlicParams {
  int k_sp = 150;        ///< requested superpixel count
  double m = 40.0;       ///< compactness
  int iterations = 10;

  /// Throws ParameterError unless 1 <= k_sp <= pixel_count, m > 0, iterations >= 1.
  void validate(Eigen::Index pixel_count) const;

  friend bool operator==(const SlicParams&, const SlicParams&) = default;
};

/// Over-segmentation of an image into 4-connected regions.
struct SuperpixelPartition {
  int width = 0;
  int height = 0;
  std::vector<int> labels;                ///< per pixel, row-major, in [0, region_count)
  std::vector<std::vector<int>> members;  ///< per region, ascending pixel indices

  int region_count() const { return static_cast<int>(members.size()); }

  /// Builds `members` from `labels`; throws if labels are not dense in [0, count).
  static SuperpixelPartition from_labels(int width, int height, std::vector<int> labels);
};

/// Grid step sqrt(N / k_sp).
double grid_step(Eigen::Index pixel_count, int k_sp);

/// SLIC over (Y, Cb, Cr, x, y) with distance
/// D = sqrt(d_c^2 + (d_s / S)^2 m^2), followed by orphan relabeling so every
/// region is 4-connected. Deterministic: equal distances go to the lower
/// centroid id.
SuperpixelPartition slic_segment(const ImageRGB& img, const SlicParams& params);

/// Copy of `img` with region boundaries painted in `color`.
ImageRGB overlay_boundaries(const ImageRGB& img, const SuperpixelPartition& part,
                            Rgb color = {255, 0, 255});

} // namespace bowfire
