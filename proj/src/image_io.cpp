#include "bowfire/image_io.hpp"

#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace bowfire::io {

namespace fs = std::filesystem;

namespace {

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

ImageRGB read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw IoError("cannot decode PNG " + quoted(path) + ": " + image.message);
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw IoError("empty PNG " + quoted(path));
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  ImageRGB::Buffer buf(static_cast<Eigen::Index>(w) * h, 3);
  // Row-major n x 3 uint8 storage is exactly the packed RGB layout libpng emits.
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + quoted(path) + ": " + msg);
  }
  return ImageRGB(w, h, std::move(buf));
}

// Reads one whitespace-delimited PNM header token, skipping '#' comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

ImageRGB read_ppm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + quoted(path));
  if (pnm_token(in) != "P6") throw IoError("not a binary PPM: " + quoted(path));
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(pnm_token(in));
    h = std::stoi(pnm_token(in));
    maxval = std::stoi(pnm_token(in));
  } catch (const std::exception&) {
    throw IoError("malformed PPM header in " + quoted(path));
  }
  if (w < 1 || h < 1) throw IoError("bad PPM dimensions in " + quoted(path));
  if (maxval != 255)
    throw IoError("only 8-bit PPM (maxval 255) is supported: " + quoted(path));
  ImageRGB::Buffer buf(static_cast<Eigen::Index>(w) * h, 3);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw IoError("truncated PPM " + quoted(path));
  return ImageRGB(w, h, std::move(buf));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

ImageRGB read_jpeg(const fs::path& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw IoError("cannot open " + quoted(path));
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  std::vector<std::uint8_t> data;
  int w = 0, h = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::fclose(file);
    throw IoError("cannot decode JPEG " + quoted(path) + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  w = static_cast<int>(cinfo.output_width);
  h = static_cast<int>(cinfo.output_height);
  data.resize(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = data.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  std::fclose(file);
  ImageRGB::Buffer buf = Eigen::Map<const ImageRGB::Buffer>(data.data(), Eigen::Index(w) * h, 3);
  return ImageRGB(w, h, std::move(buf));
}

void write_png_buffer(const fs::path& path, png_uint_32 w, png_uint_32 h,
                      png_uint_32 format, const void* data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = w;
  image.height = h;
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr))
    throw IoError("cannot write PNG " + quoted(path) + ": " + image.message);
}

} // namespace

ImageRGB read_image(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + quoted(path));
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  in.close();
  if (got == sig.size() && png_sig_cmp(sig.data(), 0, sig.size()) == 0)
    return read_png(path);
  if (got >= 2 && sig[0] == 'P' && sig[1] == '6') return read_ppm(path);
  if (got >= 3 && sig[0] == 0xFF && sig[1] == 0xD8 && sig[2] == 0xFF) return read_jpeg(path);
  throw IoError("unsupported image format (expected PNG, P6 PPM or JPEG): " + quoted(path));
}

BinaryMask read_mask(const fs::path& path) {
  const ImageRGB img = read_image(path);
  BinaryMask mask(img.width(), img.height());
  for (Eigen::Index i = 0; i < img.size(); ++i)
    mask.set(i, rgb_to_luma(img.pixel(i)) >= 128);
  return mask;
}

void write_png(const fs::path& path, const ImageRGB& img) {
  write_png_buffer(path, img.width(), img.height(), PNG_FORMAT_RGB, img.pixels().data());
}

void write_ppm(const fs::path& path, const ImageRGB& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + quoted(path));
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size()));
  if (!out) throw IoError("cannot write " + quoted(path));
}

void write_mask_png(const fs::path& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(mask.size()));
  for (Eigen::Index i = 0; i < mask.size(); ++i) gray[i] = mask[i] ? 255 : 0;
  write_png_buffer(path, mask.width(), mask.height(), PNG_FORMAT_GRAY, gray.data());
}

void write_label_png(const fs::path& path, std::span<const int> labels, int width,
                     int height) {
  if (labels.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("label map size does not match width x height");
  std::vector<std::uint16_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[i] = static_cast<std::uint16_t>(labels[i]);
  write_png_buffer(path, width, height, PNG_FORMAT_LINEAR_Y, out.data());
}

} // namespace bowfire::io
