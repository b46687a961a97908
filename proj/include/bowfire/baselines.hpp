#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "bowfire/imaging.hpp"

namespace bowfire {

// Channel-clustering comparison methods. These reproduce only the clustering
// step of the original detectors; any post-processing those detectors apply
// is not part of this module.

enum class ClusterChannel { YuvV, YCbCrCb };
enum class FireRule { HighestMean, LowestMean };

struct ClusterSpec {
  ClusterChannel channel = ClusterChannel::YuvV;
  int cluster_count = 2;
  FireRule fire_rule = FireRule::HighestMean;
};

/// V of YUV, two clusters, brightest-V cluster is fire.
inline constexpr ClusterSpec kRossiSpec{ClusterChannel::YuvV, 2, FireRule::HighestMean};
/// Cb of YCbCr, four clusters, lowest-Cb cluster is fire.
inline constexpr ClusterSpec kRudzSpec{ClusterChannel::YCbCrCb, 4, FireRule::LowestMean};

struct KMeans1D {
  std::vector<int> assignment;  ///< per input value
  std::vector<double> means;    ///< ascending
};

/// Lloyd's algorithm in one dimension, initialized at the (i + 0.5) / k
/// quantiles, stopping at an assignment fixpoint or after 100 rounds.
/// Equidistant values go to the lower cluster. If the exact optimal split of
/// the sorted distinct values is cheap to compute (k * d^2 <= 5e7) and has a
/// lower within-cluster sum of squares, that split is returned instead. Throws DegenerateInput when
/// fewer than k distinct values exist and ParameterError when k < 1.
KMeans1D kmeans_1d(std::span<const double> values, int k);

/// Per-pixel channel value used by `spec`.
std::vector<double> cluster_channel(const ImageRGB& img, ClusterChannel channel);

BinaryMask cluster_segment(const ImageRGB& img, const ClusterSpec& spec);

std::string_view to_string(ClusterChannel channel);

} // namespace bowfire
