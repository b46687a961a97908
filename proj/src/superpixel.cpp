#include "bowfire/superpixel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace bowfire {

namespace {

struct Centroid {
  Eigen::Vector3d color;  // Y, Cb, Cr
  Eigen::Vector2d pos;    // x, y
};

int clamp_round(double v, int lo, int hi) {
  return std::clamp(static_cast<int>(std::lround(v)), lo, hi);
}

// Squared central differences of luma, borders replicated.
Plane<int> luma_gradient(const Plane<std::uint8_t>& luma) {
  const int h = static_cast<int>(luma.rows()), w = static_cast<int>(luma.cols());
  Plane<int> g(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int dx = int(luma(y, std::min(x + 1, w - 1))) - int(luma(y, std::max(x - 1, 0)));
      const int dy = int(luma(std::min(y + 1, h - 1), x)) - int(luma(std::max(y - 1, 0), x));
      g(y, x) = dx * dx + dy * dy;
    }
  }
  return g;
}

// Regular grid with roughly k_sp cells; the shorter side is split first so
// elongated images still get about k_sp seeds.
struct SeedGrid {
  std::vector<Eigen::Vector2i> seeds;
  int xstrips = 1;
  int ystrips = 1;
};

SeedGrid grid_seeds(int w, int h, int k_sp, double step) {
  int xstrips, ystrips;
  if (w >= h) {
    ystrips = clamp_round(h / step, 1, h);
    xstrips = clamp_round(double(k_sp) / ystrips, 1, w);
  } else {
    xstrips = clamp_round(w / step, 1, w);
    ystrips = clamp_round(double(k_sp) / xstrips, 1, h);
  }
  SeedGrid grid{{}, xstrips, ystrips};
  auto& seeds = grid.seeds;
  seeds.reserve(static_cast<std::size_t>(xstrips) * ystrips);
  for (int j = 0; j < ystrips; ++j) {
    // Pixel centers sit at integer coordinates, so the cell center is half a
    // pixel below (i + 0.5) * size / strips.
    const int y = std::clamp(static_cast<int>(std::floor((j + 0.5) * h / ystrips - 0.5)), 0, h - 1);
    for (int i = 0; i < xstrips; ++i) {
      const int x =
          std::clamp(static_cast<int>(std::floor((i + 0.5) * w / xstrips - 0.5)), 0, w - 1);
      seeds.emplace_back(x, y);
    }
  }
  return grid;
}

// Raster-order flood fill; components smaller than `min_size` join the
// region of their left (else upper) neighbor.
std::vector<int> enforce_connectivity(const std::vector<int>& labels, int w, int h,
                                      double min_size) {
  const std::size_t n = labels.size();
  std::vector<int> out(n, -1);
  std::vector<int> component;
  component.reserve(n);
  int next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (out[start] >= 0) continue;
    const int sx = static_cast<int>(start % w), sy = static_cast<int>(start / w);
    int adjacent = -1;
    if (sx > 0)
      adjacent = out[start - 1];
    else if (sy > 0)
      adjacent = out[start - w];

    const int old = labels[start];
    component.clear();
    component.push_back(static_cast<int>(start));
    out[start] = next;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const int p = component[head];
      const int px = p % w, py = p / w;
      const int nbrs[4][2] = {{px - 1, py}, {px + 1, py}, {px, py - 1}, {px, py + 1}};
      for (const auto& [nx, ny] : nbrs) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const int q = ny * w + nx;
        if (out[q] < 0 && labels[q] == old) {
          out[q] = next;
          component.push_back(q);
        }
      }
    }
    if (adjacent >= 0 && static_cast<double>(component.size()) < min_size) {
      for (int p : component) out[p] = adjacent;
    } else {
      ++next;
    }
  }
  return out;
}

} // namespace

void SlicParams::validate(Eigen::Index pixel_count) const {
  if (k_sp < 1 || k_sp > pixel_count)
    throw ParameterError("k_sp must be in [1, " + std::to_string(pixel_count) + "], got " +
                         std::to_string(k_sp));
  if (!(m > 0.0) || !std::isfinite(m))
    throw ParameterError("compactness m must be positive");
  if (iterations < 1) throw ParameterError("SLIC iterations must be >= 1");
}

SuperpixelPartition SuperpixelPartition::from_labels(int width, int height,
                                                     std::vector<int> labels) {
  if (labels.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("label count does not match width x height");
  SuperpixelPartition part;
  part.width = width;
  part.height = height;
  int count = 0;
  for (int l : labels) {
    if (l < 0) throw FormatError("negative superpixel label");
    count = std::max(count, l + 1);
  }
  part.members.resize(count);
  for (std::size_t i = 0; i < labels.size(); ++i)
    part.members[labels[i]].push_back(static_cast<int>(i));
  for (const auto& m : part.members)
    if (m.empty()) throw FormatError("superpixel labels are not dense");
  part.labels = std::move(labels);
  return part;
}

double grid_step(Eigen::Index pixel_count, int k_sp) {
  return std::sqrt(static_cast<double>(pixel_count) / k_sp);
}

SuperpixelPartition slic_segment(const ImageRGB& img, const SlicParams& params) {
  params.validate(img.size());
  const int w = img.width(), h = img.height();
  const Eigen::Index n = img.size();
  const double step = grid_step(n, params.k_sp);
  const double spatial_weight = (params.m / step) * (params.m / step);

  const PixelBuffer<double> color = to_ycbcr(img).cast<double>();
  const Plane<int> gradient = luma_gradient(to_luma(img));

  const SeedGrid grid = grid_seeds(w, h, params.k_sp, step);
  std::vector<Centroid> centroids;
  for (const auto& seed : grid.seeds) {
    // Move off edges: lowest gradient in the 3x3 neighborhood, center first.
    Eigen::Vector2i best = seed;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int x = seed.x() + dx, y = seed.y() + dy;
        if (x < 0 || y < 0 || x >= w || y >= h) continue;
        if (gradient(y, x) < gradient(best.y(), best.x())) best = {x, y};
      }
    }
    const Eigen::Index i = img.index(best.x(), best.y());
    centroids.push_back({color.row(i).matrix().transpose(), best.cast<double>()});
  }

  const int k = static_cast<int>(centroids.size());
  // Search window covers at least one grid cell even for elongated grids.
  const double reach_x = std::max(step, double(w) / grid.xstrips);
  const double reach_y = std::max(step, double(h) / grid.ystrips);
  const int rx = static_cast<int>(std::ceil(reach_x));
  const int ry = static_cast<int>(std::ceil(reach_y));

  const auto dist2 = [&](const Centroid& c, Eigen::Index i, int x, int y) {
    const double dc = (color.row(i).matrix().transpose() - c.color).squaredNorm();
    const double ds = (Eigen::Vector2d(x, y) - c.pos).squaredNorm();
    return dc + ds * spatial_weight;
  };

  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<double> best(static_cast<std::size_t>(n));
  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
    std::fill(labels.begin(), labels.end(), -1);
    for (int c = 0; c < k; ++c) {
      const auto& cen = centroids[c];
      const int cx = static_cast<int>(std::lround(cen.pos.x()));
      const int cy = static_cast<int>(std::lround(cen.pos.y()));
      for (int y = std::max(0, cy - ry); y <= std::min(h - 1, cy + ry); ++y) {
        for (int x = std::max(0, cx - rx); x <= std::min(w - 1, cx + rx); ++x) {
          const Eigen::Index i = img.index(x, y);
          const double d = dist2(cen, i, x, y);
          if (d < best[i]) {
            best[i] = d;
            labels[i] = c;
          }
        }
      }
    }
    // Pixels outside every window fall back to an exhaustive search.
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[i] >= 0) continue;
      const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
      for (int c = 0; c < k; ++c) {
        const double d = dist2(centroids[c], i, x, y);
        if (d < best[i]) {
          best[i] = d;
          labels[i] = c;
        }
      }
    }

    std::vector<Eigen::Matrix<double, 5, 1>> sums(k, Eigen::Matrix<double, 5, 1>::Zero());
    std::vector<long> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& s = sums[labels[i]];
      s.head<3>() += color.row(i).matrix().transpose();
      s(3) += static_cast<double>(i % w);
      s(4) += static_cast<double>(i / w);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      const Eigen::Matrix<double, 5, 1> mean = sums[c] / static_cast<double>(counts[c]);
      centroids[c].color = mean.head<3>();
      centroids[c].pos = mean.tail<2>();
    }
  }

  const double min_size = static_cast<double>(n) / (4.0 * params.k_sp);
  return SuperpixelPartition::from_labels(w, h, enforce_connectivity(labels, w, h, min_size));
}

ImageRGB overlay_boundaries(const ImageRGB& img, const SuperpixelPartition& part, Rgb color) {
  if (part.width != img.width() || part.height != img.height())
    throw DimensionMismatch("partition does not match image");
  ImageRGB out = img;
  const int w = img.width(), h = img.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = part.labels[img.index(x, y)];
      const bool edge = (x + 1 < w && part.labels[img.index(x + 1, y)] != l) ||
                        (y + 1 < h && part.labels[img.index(x, y + 1)] != l);
      if (edge) out.set(x, y, color);
    }
  }
  return out;
}

} // namespace bowfire
