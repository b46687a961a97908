#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "bowfire/imaging.hpp"

namespace bowfire {

enum class Label : std::uint8_t { NotFire = 0, Fire = 1 };

std::string_view to_string(Label label);

struct LabeledPixel {
  PixelYCbCr pixel;
  Label label = Label::NotFire;
};

/// Naive-Bayes statistics over discretized (Y, Cb, Cr).
///
/// Rows of the likelihood table are indexed class * 3 + channel, columns by
/// bin; all probabilities are stored as natural logs. Channel values are
/// mapped to bins through `bin_edges`: value v falls in bin i when
/// edge[i] <= v < edge[i + 1], with edge[0] = 0 and edge[bins] = 256.
class ColorModel {
public:
  static constexpr int kClasses = 2;
  static constexpr int kChannels = 3;

  using Edges = Eigen::Matrix<double, kChannels, Eigen::Dynamic, Eigen::RowMajor>;
  using LogTable = Eigen::Matrix<double, kClasses * kChannels, Eigen::Dynamic, Eigen::RowMajor>;

  /// Validates the tables (shapes, normalization, finiteness) and throws
  /// FormatError when they do not describe a proper model.
  ColorModel(Edges bin_edges, Eigen::Vector2d log_prior, LogTable log_likelihood);

  int bins() const { return static_cast<int>(log_likelihood_.cols()); }
  const Edges& bin_edges() const { return bin_edges_; }
  const Eigen::Vector2d& log_prior() const { return log_prior_; }
  const LogTable& log_likelihood() const { return log_likelihood_; }

  int bin_of(int channel, std::uint8_t value) const { return lut_[channel][value]; }

  /// Unnormalized log posterior per class, indexed by Label.
  Eigen::Vector2d scores(PixelYCbCr p) const;

private:
  Edges bin_edges_;
  Eigen::Vector2d log_prior_;
  LogTable log_likelihood_;
  std::array<std::array<std::uint8_t, 256>, kChannels> lut_{};
};

/// Equal-width edges over the 8-bit range.
ColorModel::Edges equal_width_edges(int bins);

/// Equal-width histograms per class and channel with add-one smoothing;
/// priors from class frequencies. Throws ParameterError for bins outside
/// [2, 256] and TrainingError when a class is missing.
ColorModel train_color(std::span<const LabeledPixel> data, int bins);

/// Normalized posterior (not_fire, fire).
Eigen::Vector2d posterior(const ColorModel& model, PixelYCbCr p);

/// Argmax of the class scores; exact ties go to NotFire.
Label classify_pixel(const ColorModel& model, PixelYCbCr p);

BinaryMask classify_image_color(const ColorModel& model, const ImageRGB& img);

} // namespace bowfire
