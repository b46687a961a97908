#include "bowfire/color_classifier.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bowfire {

std::string_view to_string(Label label) {
  return label == Label::Fire ? "fire" : "not_fire";
}

ColorModel::Edges equal_width_edges(int bins) {
  ColorModel::Edges edges(ColorModel::kChannels, bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges.col(i).setConstant(256.0 * i / bins);
  return edges;
}

ColorModel::ColorModel(Edges bin_edges, Eigen::Vector2d log_prior, LogTable log_likelihood)
    : bin_edges_(std::move(bin_edges)),
      log_prior_(std::move(log_prior)),
      log_likelihood_(std::move(log_likelihood)) {
  const auto bins = log_likelihood_.cols();
  if (bins < 1 || bins > 256)
    throw FormatError("color model bin count out of range: " + std::to_string(bins));
  if (bin_edges_.cols() != bins + 1)
    throw FormatError("color model edge count must equal bins + 1");
  if (!log_prior_.allFinite() || !log_likelihood_.allFinite())
    throw FormatError("color model contains non-finite log probabilities");
  if (std::abs(log_prior_.array().exp().sum() - 1.0) > 1e-9)
    throw FormatError("color model priors do not sum to 1");
  const Eigen::VectorXd row_mass = log_likelihood_.array().exp().rowwise().sum();
  if (((row_mass.array() - 1.0).abs() > 1e-9).any())
    throw FormatError("color model likelihoods do not sum to 1");

  for (int c = 0; c < kChannels; ++c) {
    const auto edges = bin_edges_.row(c);
    if (edges(0) != 0.0 || edges(bins) != 256.0)
      throw FormatError("color model edges must span [0, 256]");
    for (Eigen::Index i = 1; i <= bins; ++i)
      if (!(edges(i) > edges(i - 1)))
        throw FormatError("color model edges must be strictly increasing");
    int bin = 0;
    for (int v = 0; v < 256; ++v) {
      while (bin + 1 < bins && v >= edges(bin + 1)) ++bin;
      lut_[c][v] = static_cast<std::uint8_t>(bin);
    }
  }
}

Eigen::Vector2d ColorModel::scores(PixelYCbCr p) const {
  const std::array<std::uint8_t, kChannels> values{p.y, p.cb, p.cr};
  Eigen::Vector2d s = log_prior_;
  for (int cls = 0; cls < kClasses; ++cls)
    for (int c = 0; c < kChannels; ++c)
      s(cls) += log_likelihood_(cls * kChannels + c, bin_of(c, values[c]));
  return s;
}

ColorModel train_color(std::span<const LabeledPixel> data, int bins) {
  if (bins < 1 || bins > 256)
    throw ParameterError("color bins must be in [1, 256], got " + std::to_string(bins));

  // Integer counts keep training independent of sample order.
  Eigen::Matrix<long long, ColorModel::kClasses * ColorModel::kChannels, Eigen::Dynamic,
                Eigen::RowMajor>
      counts = decltype(counts)::Zero(ColorModel::kClasses * ColorModel::kChannels, bins);
  Eigen::Matrix<long long, 2, 1> class_counts = Eigen::Matrix<long long, 2, 1>::Zero();

  const auto bin = [bins](std::uint8_t v) { return static_cast<int>(v) * bins / 256; };
  for (const auto& [px, label] : data) {
    const int cls = static_cast<int>(label);
    ++class_counts(cls);
    counts(cls * 3 + 0, bin(px.y)) += 1;
    counts(cls * 3 + 1, bin(px.cb)) += 1;
    counts(cls * 3 + 2, bin(px.cr)) += 1;
  }
  if (class_counts(0) == 0 || class_counts(1) == 0)
    throw TrainingError("color training data must contain both fire and not_fire pixels");

  const double total = static_cast<double>(class_counts.sum());
  Eigen::Vector2d log_prior;
  for (int cls = 0; cls < 2; ++cls) log_prior(cls) = std::log(class_counts(cls) / total);

  ColorModel::LogTable log_likelihood(ColorModel::kClasses * ColorModel::kChannels, bins);
  for (int row = 0; row < log_likelihood.rows(); ++row) {
    const double denom = static_cast<double>(class_counts(row / 3) + bins);
    for (int b = 0; b < bins; ++b)
      log_likelihood(row, b) = std::log((counts(row, b) + 1) / denom);
  }
  return ColorModel(equal_width_edges(bins), log_prior, std::move(log_likelihood));
}

Eigen::Vector2d posterior(const ColorModel& model, PixelYCbCr p) {
  const Eigen::Vector2d s = model.scores(p);
  const double top = s.maxCoeff();
  const Eigen::Vector2d w = (s.array() - top).exp().matrix();
  return w / w.sum();
}

Label classify_pixel(const ColorModel& model, PixelYCbCr p) {
  const Eigen::Vector2d s = model.scores(p);
  return s(1) > s(0) ? Label::Fire : Label::NotFire;
}

BinaryMask classify_image_color(const ColorModel& model, const ImageRGB& img) {
  BinaryMask mask(img.width(), img.height());
  for (Eigen::Index i = 0; i < img.size(); ++i)
    mask.set(i, classify_pixel(model, rgb_to_ycbcr(img.pixel(i))) == Label::Fire);
  return mask;
}

} // namespace bowfire
