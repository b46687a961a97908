#include "bowfire/texture.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace bowfire {

namespace {

constexpr std::array<std::uint8_t, 256> make_bin_table() {
  std::array<std::uint8_t, 256> table{};
  std::uint8_t next = 0;
  for (int code = 0; code < 256; ++code)
    table[code] = is_uniform(static_cast<std::uint8_t>(code)) ? next++ : kLbpBins - 1;
  return table;
}

constexpr auto kBinTable = make_bin_table();

// Row/column offsets of the eight neighbors, clockwise from top-left.
constexpr std::array<std::array<int, 2>, 8> kRing = {
    {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}}};

} // namespace

std::uint8_t lbp_code(const Neighborhood& n) {
  const std::uint8_t center = n[4];
  unsigned code = 0;
  for (const auto& [dr, dc] : kRing)
    code = (code << 1) | (n[(1 + dr) * 3 + (1 + dc)] > center ? 1u : 0u);
  return static_cast<std::uint8_t>(code);
}

const std::array<std::uint8_t, 256>& uniform_bin_table() { return kBinTable; }

Plane<std::uint8_t> lbp_codes(const Plane<std::uint8_t>& luma) {
  const int h = static_cast<int>(luma.rows()), w = static_cast<int>(luma.cols());
  Plane<std::uint8_t> codes(h, w);
  Neighborhood n{};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          n[(dr + 1) * 3 + (dc + 1)] =
              luma(std::clamp(y + dr, 0, h - 1), std::clamp(x + dc, 0, w - 1));
      codes(y, x) = lbp_code(n);
    }
  }
  return codes;
}

LbpHistogram region_histogram(const Plane<std::uint8_t>& codes, std::span<const int> pixels) {
  if (pixels.empty()) throw std::logic_error("LBP histogram of an empty region");
  LbpHistogram hist = LbpHistogram::Zero();
  const std::uint8_t* data = codes.data();
  for (int p : pixels) hist(kBinTable[data[p]]) += 1.0;
  return hist / static_cast<double>(pixels.size());
}

std::vector<LbpHistogram> extract_features(const ImageRGB& img, const SuperpixelPartition& part) {
  if (part.width != img.width() || part.height != img.height())
    throw DimensionMismatch("partition does not match image");
  const Plane<std::uint8_t> codes = lbp_codes(to_luma(img));
  std::vector<LbpHistogram> out;
  out.reserve(part.members.size());
  for (const auto& members : part.members) out.push_back(region_histogram(codes, members));
  return out;
}

LbpHistogram image_histogram(const ImageRGB& img) {
  const Plane<std::uint8_t> codes = lbp_codes(to_luma(img));
  std::vector<int> all(static_cast<std::size_t>(img.size()));
  std::iota(all.begin(), all.end(), 0);
  return region_histogram(codes, all);
}

TextureModel::TextureModel(FeatureMatrix features, std::vector<Label> labels, int k)
    : features_(std::move(features)), labels_(std::move(labels)), k_(k) {
  if (static_cast<Eigen::Index>(labels_.size()) != features_.rows())
    throw DimensionMismatch("texture model: one label per training row required");
  if (k_ < 1 || k_ % 2 == 0 || k_ > features_.rows())
    throw ParameterError("KNN k must be odd and within [1, " +
                         std::to_string(features_.rows()) + "], got " + std::to_string(k_));
  const bool has_fire = std::ranges::count(labels_, Label::Fire) > 0;
  const bool has_other = std::ranges::count(labels_, Label::NotFire) > 0;
  if (!has_fire || !has_other)
    throw TrainingError("texture training data must contain both fire and not_fire samples");
}

Label classify_feature(const TextureModel& model, const LbpHistogram& v) {
  const Eigen::VectorXd dist = l1_distances(model.features(), v);
  std::vector<int> order(static_cast<std::size_t>(dist.size()));
  std::iota(order.begin(), order.end(), 0);
  const auto k = static_cast<std::ptrdiff_t>(model.k());
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
    return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
  });
  const auto fire_votes = std::count_if(order.begin(), order.begin() + k, [&](int i) {
    return model.labels()[i] == Label::Fire;
  });
  return 2 * fire_votes > k ? Label::Fire : Label::NotFire;
}

BinaryMask classify_regions(const TextureModel& model, const ImageRGB& img,
                            const SuperpixelPartition& part) {
  const auto features = extract_features(img, part);
  BinaryMask mask(img.width(), img.height());
  for (std::size_t r = 0; r < features.size(); ++r) {
    if (classify_feature(model, features[r]) != Label::Fire) continue;
    for (int p : part.members[r]) mask.set(p, true);
  }
  return mask;
}

BinaryMask classify_image_texture(const TextureModel& model, const ImageRGB& img,
                                  const SlicParams& params) {
  return classify_regions(model, img, slic_segment(img, params));
}

} // namespace bowfire
