#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "bowfire/errors.hpp"

namespace bowfire {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct PixelYCbCr {
  std::uint8_t y = 0;
  std::uint8_t cb = 0;
  std::uint8_t cr = 0;
  friend bool operator==(const PixelYCbCr&, const PixelYCbCr&) = default;
};

/// n x 3 row-major channel buffer; row i is pixel i in raster order.
template <typename Scalar>
using PixelBuffer = Eigen::Array<Scalar, Eigen::Dynamic, 3, Eigen::RowMajor>;

/// height x width single-channel plane.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit RGB raster. Never empty.
class ImageRGB {
public:
  using Buffer = PixelBuffer<std::uint8_t>;

  ImageRGB(int width, int height, Rgb fill = {});
  ImageRGB(int width, int height, Buffer pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  Eigen::Index size() const { return pixels_.rows(); }

  Rgb pixel(Eigen::Index i) const {
    return {pixels_(i, 0), pixels_(i, 1), pixels_(i, 2)};
  }
  Rgb operator()(int x, int y) const { return pixel(index(x, y)); }
  void set(int x, int y, Rgb p) {
    const auto i = index(x, y);
    pixels_(i, 0) = p.r;
    pixels_(i, 1) = p.g;
    pixels_(i, 2) = p.b;
  }

  Eigen::Index index(int x, int y) const {
    return static_cast<Eigen::Index>(y) * width_ + x;
  }

  const Buffer& pixels() const { return pixels_; }

  friend bool operator==(const ImageRGB& a, const ImageRGB& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           (a.pixels_ == b.pixels_).all();
  }

private:
  int width_;
  int height_;
  Buffer pixels_;
};

/// Per-pixel fire decision, row-major, true = fire.
class BinaryMask {
public:
  using Bits = Eigen::Array<bool, Eigen::Dynamic, 1>;

  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, Bits bits);

  int width() const { return width_; }
  int height() const { return height_; }
  Eigen::Index size() const { return bits_.size(); }

  bool operator[](Eigen::Index i) const { return bits_(i); }
  bool operator()(int x, int y) const {
    return bits_(static_cast<Eigen::Index>(y) * width_ + x);
  }
  void set(Eigen::Index i, bool v) { bits_(i) = v; }
  void set(int x, int y, bool v) {
    bits_(static_cast<Eigen::Index>(y) * width_ + x) = v;
  }

  const Bits& bits() const { return bits_; }
  Bits& bits() { return bits_; }

  Eigen::Index popcount() const { return bits_.count(); }
  bool same_shape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
    return a.same_shape(b) && (a.bits_ == b.bits_).all();
  }

private:
  int width_;
  int height_;
  Bits bits_;
};

/// Full-range BT.601 (JPEG) RGB -> YCbCr, rounded half-up and clamped.
PixelYCbCr rgb_to_ycbcr(Rgb p);

/// Y channel of rgb_to_ycbcr.
std::uint8_t rgb_to_luma(Rgb p);

/// YUV V component, 0.877 (R - Y), computed from the integer luma.
template <typename Scalar = double>
Scalar rgb_to_yuv_v(Rgb p) {
  return Scalar(0.877) * (Scalar(p.r) - Scalar(rgb_to_luma(p)));
}

/// Whole-image conversion; row i holds (Y, Cb, Cr) of pixel i.
PixelBuffer<std::uint8_t> to_ycbcr(const ImageRGB& img);

/// Luma plane (height x width), the grayscale source for LBP.
Plane<std::uint8_t> to_luma(const ImageRGB& img);

/// Pixel-wise intersection. Throws DimensionMismatch on shape mismatch.
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);

} // namespace bowfire
