#pragma once

#include <filesystem>
#include <span>

#include "bowfire/imaging.hpp"

namespace bowfire::io {

/// Decodes PNG (any bit depth / color type), binary PPM (P6, maxval 255) or
/// baseline JPEG. The format is sniffed from the file signature, not the
/// extension. JPEG is accepted for convenience; lossy artifacts make it
/// unsuitable for ground-truth masks.
ImageRGB read_image(const std::filesystem::path& path);

/// Ground-truth mask: any readable raster; a pixel is fire iff its luma >= 128.
BinaryMask read_mask(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ImageRGB& img);
void write_ppm(const std::filesystem::path& path, const ImageRGB& img);

/// 8-bit single-channel PNG, 0 = non-fire, 255 = fire.
void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask);

/// 16-bit single-channel PNG of superpixel ids (debug output).
void write_label_png(const std::filesystem::path& path, std::span<const int> labels,
                     int width, int height);

} // namespace bowfire::io
