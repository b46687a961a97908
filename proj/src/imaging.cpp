#include "bowfire/imaging.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace bowfire {

namespace {

std::uint8_t round_clamp(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

void check_dims(int width, int height) {
  if (width < 1 || height < 1)
    throw ParameterError("image dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
}

} // namespace

ImageRGB::ImageRGB(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.resize(static_cast<Eigen::Index>(width) * height, 3);
  pixels_.col(0).setConstant(fill.r);
  pixels_.col(1).setConstant(fill.g);
  pixels_.col(2).setConstant(fill.b);
}

ImageRGB::ImageRGB(int width, int height, Buffer pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.rows() != static_cast<Eigen::Index>(width) * height)
    throw DimensionMismatch("pixel buffer size does not match width x height");
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height),
      bits_(Bits::Constant(static_cast<Eigen::Index>(width) * height, fill)) {
  check_dims(width, height);
}

BinaryMask::BinaryMask(int width, int height, Bits bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dims(width, height);
  if (bits_.size() != static_cast<Eigen::Index>(width) * height)
    throw DimensionMismatch("mask bit count does not match width x height");
}

PixelYCbCr rgb_to_ycbcr(Rgb p) {
  const double r = p.r, g = p.g, b = p.b;
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  const double cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
  const double cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
  return {round_clamp(y), round_clamp(cb), round_clamp(cr)};
}

std::uint8_t rgb_to_luma(Rgb p) { return rgb_to_ycbcr(p).y; }

PixelBuffer<std::uint8_t> to_ycbcr(const ImageRGB& img) {
  PixelBuffer<std::uint8_t> out(img.size(), 3);
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    const auto q = rgb_to_ycbcr(img.pixel(i));
    out(i, 0) = q.y;
    out(i, 1) = q.cb;
    out(i, 2) = q.cr;
  }
  return out;
}

Plane<std::uint8_t> to_luma(const ImageRGB& img) {
  Plane<std::uint8_t> out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(y, x) = rgb_to_luma(img(x, y));
  return out;
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b))
    throw DimensionMismatch("mask_and: masks differ in shape");
  return BinaryMask(a.width(), a.height(), a.bits() && b.bits());
}

} // namespace bowfire
