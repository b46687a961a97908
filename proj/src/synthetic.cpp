#include "bowfire/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bowfire/image_io.hpp"

namespace bowfire::synthetic {

namespace fs = std::filesystem;

namespace {

using Color = Eigen::Array3d;

Rgb to_rgb(const Color& c) {
  const auto ch = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  };
  return {ch(c(0)), ch(c(1)), ch(c(2))};
}

Color flame_palette(Rng& rng) {
  return {rng.uniform(200, 255), rng.uniform(40, 220), rng.uniform(0, 70)};
}

// Smooth low-frequency field: bilinear (smoothstep) interpolation of a coarse
// random grid, one offset per channel.
class ValueNoise {
public:
  ValueNoise(Rng& rng, int width, int height, int cell, double amplitude)
      : cell_(cell), cols_(width / cell + 2), rows_(height / cell + 2),
        grid_(static_cast<std::size_t>(cols_ * rows_)) {
    for (auto& c : grid_)
      c = Color(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)) * amplitude;
  }

  Color operator()(int x, int y) const {
    const double fx = double(x) / cell_, fy = double(y) / cell_;
    const int gx = static_cast<int>(fx), gy = static_cast<int>(fy);
    const auto smooth = [](double t) { return t * t * (3 - 2 * t); };
    const double tx = smooth(fx - gx), ty = smooth(fy - gy);
    const auto at = [&](int i, int j) { return grid_[static_cast<std::size_t>(j * cols_ + i)]; };
    const Color top = at(gx, gy) * (1 - tx) + at(gx + 1, gy) * tx;
    const Color bottom = at(gx, gy + 1) * (1 - tx) + at(gx + 1, gy + 1) * tx;
    return top * (1 - ty) + bottom * ty;
  }

private:
  int cell_, cols_, rows_;
  std::vector<Color> grid_;
};

Color background_base(Rng& rng) {
  static const Color kBases[] = {
      {90, 130, 180}, {110, 110, 115}, {70, 105, 60}, {45, 50, 62}, {150, 160, 170}};
  return kBases[rng.uniform_int(0, 4)];
}

void paint_background(ImageRGB& img, Rng& rng) {
  const Color base = background_base(rng);
  const ValueNoise noise(rng, img.width(), img.height(), 24, 25.0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) img.set(x, y, to_rgb(base + noise(x, y)));
}

// Shaded disc: smooth radial falloff, no pixel noise.
void paint_disc(ImageRGB& img, Rng& rng, double cx, double cy, double r) {
  const Color c = flame_palette(rng);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double d = std::hypot(x - cx, y - cy) / r;
      if (d < 1.0) img.set(x, y, to_rgb(c * (1.0 - 0.25 * d * d)));
    }
  }
}

void paint_gradient(ImageRGB& img, Rng& rng, int x0, int y0, int w, int h) {
  const Color a = flame_palette(rng), b = flame_palette(rng);
  const bool horizontal = rng.uniform() < 0.5;
  for (int y = std::max(0, y0); y < std::min(img.height(), y0 + h); ++y) {
    for (int x = std::max(0, x0); x < std::min(img.width(), x0 + w); ++x) {
      const double t = horizontal ? double(x - x0) / w : double(y - y0) / h;
      img.set(x, y, to_rgb(a * (1 - t) + b * t));
    }
  }
}

struct Blob {
  double cx, cy, r0, stretch, phase1, phase2, amp1, amp2;

  static Blob random(Rng& rng, double cx, double cy, double r0) {
    return {cx,
            cy,
            r0,
            rng.uniform(1.0, 1.4),
            rng.uniform(0, 2 * std::numbers::pi),
            rng.uniform(0, 2 * std::numbers::pi),
            rng.uniform(0.1, 0.25),
            rng.uniform(0.05, 0.15)};
  }

  /// Normalized radius: < 1 inside the blob.
  double level(int x, int y) const {
    const double dx = x - cx, dy = (y - cy) / stretch;
    const double theta = std::atan2(dy, dx);
    const double r = r0 * (1 + amp1 * std::sin(3 * theta + phase1) + amp2 * std::sin(5 * theta + phase2));
    return std::hypot(dx, dy) / r;
  }
};

// Flame color at normalized radius t with strong per-pixel texture.
Color flame_pixel(Rng& rng, double t) {
  static const Color kCore{255, 235, 150}, kMid{255, 160, 40}, kEdge{215, 70, 15};
  t = std::clamp(t, 0.0, 1.0);
  const Color base = t < 0.5 ? kCore + (kMid - kCore) * (t / 0.5)
                             : kMid + (kEdge - kMid) * ((t - 0.5) / 0.5);
  const double n = rng.normal() * 28.0;
  return base + Color(0.4 * n, n, 0.6 * n);
}

void paint_blob(ImageRGB& img, BinaryMask* truth, Rng& rng, const Blob& blob) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double t = blob.level(x, y);
      if (t >= 1.0) continue;
      img.set(x, y, to_rgb(flame_pixel(rng, t)));
      if (truth) truth->set(x, y, true);
    }
  }
}

std::pair<int, int> scene_size(Rng& rng) {
  return {rng.uniform_int(144, 192), rng.uniform_int(112, 144)};
}

} // namespace

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Scene fire_scene(Rng& rng) {
  const auto [w, h] = scene_size(rng);
  ImageRGB img(w, h);
  BinaryMask truth(w, h);
  paint_background(img, rng);
  if (rng.uniform() < 0.5)
    paint_disc(img, rng, rng.uniform(0, w), rng.uniform(0, h), rng.uniform(12, 26));
  const int blobs = rng.uniform_int(1, 2);
  for (int b = 0; b < blobs; ++b) {
    const Blob blob = Blob::random(rng, rng.uniform(0.25 * w, 0.75 * w),
                                   rng.uniform(0.3 * h, 0.7 * h), rng.uniform(16, 30));
    paint_blob(img, &truth, rng, blob);
  }
  return {std::move(img), std::move(truth)};
}

Scene distractor_scene(Rng& rng) {
  const auto [w, h] = scene_size(rng);
  ImageRGB img(w, h);
  paint_background(img, rng);
  const int discs = rng.uniform_int(1, 3);
  for (int i = 0; i < discs; ++i)
    paint_disc(img, rng, rng.uniform(0.1 * w, 0.9 * w), rng.uniform(0.1 * h, 0.9 * h),
               rng.uniform(12, 30));
  const int gradients = rng.uniform_int(0, 2);
  for (int i = 0; i < gradients; ++i)
    paint_gradient(img, rng, rng.uniform_int(0, w - 30), rng.uniform_int(0, h - 20),
                   rng.uniform_int(30, 60), rng.uniform_int(20, 50));
  return {std::move(img), BinaryMask(w, h)};
}

ImageRGB fire_patch(Rng& rng, int size) {
  ImageRGB img(size, size);
  const double c = (size - 1) / 2.0;
  const double shift = rng.uniform(-0.3, 0.3);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      img.set(x, y, to_rgb(flame_pixel(rng, std::hypot(x - c, y - c) / (size * 0.75) + shift)));
  return img;
}

ImageRGB non_fire_patch(Rng& rng, int variant, int size) {
  ImageRGB img(size, size);
  paint_background(img, rng);
  switch (variant % 3) {
    case 0:
      break;
    case 1:
      paint_disc(img, rng, rng.uniform(0.3, 0.7) * size, rng.uniform(0.3, 0.7) * size,
                 rng.uniform(0.4, 0.8) * size);
      break;
    default:
      paint_gradient(img, rng, 0, 0, size, size);
      break;
  }
  return img;
}

Corpus make_corpus(const CorpusOptions& options) {
  Rng rng(options.seed);
  Corpus c;
  for (int i = 0; i < options.train_fire; ++i) c.train_fire.push_back(fire_patch(rng));
  for (int i = 0; i < options.train_non_fire; ++i)
    c.train_non_fire.push_back(non_fire_patch(rng, i));
  for (int i = 0; i < options.fire_images; ++i) c.fire.push_back(fire_scene(rng));
  for (int i = 0; i < options.non_fire_images; ++i) c.non_fire.push_back(distractor_scene(rng));
  return c;
}

void write_corpus(const fs::path& root, const Corpus& corpus) {
  const auto name = [](int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d.png", i);
    return std::string(buf);
  };
  for (const char* d :
       {"train/fire", "train/non_fire", "fire/images", "fire/masks", "non_fire/images"})
    fs::create_directories(root / d);
  for (std::size_t i = 0; i < corpus.train_fire.size(); ++i)
    io::write_png(root / "train/fire" / name(int(i)), corpus.train_fire[i]);
  for (std::size_t i = 0; i < corpus.train_non_fire.size(); ++i)
    io::write_png(root / "train/non_fire" / name(int(i)), corpus.train_non_fire[i]);
  for (std::size_t i = 0; i < corpus.fire.size(); ++i) {
    io::write_png(root / "fire/images" / name(int(i)), corpus.fire[i].image);
    io::write_mask_png(root / "fire/masks" / name(int(i)), corpus.fire[i].truth);
  }
  for (std::size_t i = 0; i < corpus.non_fire.size(); ++i)
    io::write_png(root / "non_fire/images" / name(int(i)), corpus.non_fire[i].image);
}

} // namespace bowfire::synthetic
