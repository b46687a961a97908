#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bowfire/imaging.hpp"

namespace bowfire::testing {

inline Rgb random_rgb(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 255);
  return {std::uint8_t(d(rng)), std::uint8_t(d(rng)), std::uint8_t(d(rng))};
}

inline ImageRGB random_image(std::mt19937_64& rng, int w, int h) {
  ImageRGB img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set(x, y, random_rgb(rng));
  return img;
}

/// Piecewise-constant image: a few colored rectangles with mild noise, closer
/// to real photographs than uniform noise.
inline ImageRGB blocky_image(std::mt19937_64& rng, int w, int h) {
  ImageRGB img(w, h, random_rgb(rng));
  std::uniform_int_distribution<int> rects(1, 6);
  const int n = rects(rng);
  for (int r = 0; r < n; ++r) {
    std::uniform_int_distribution<int> xs(0, w - 1), ys(0, h - 1);
    int x0 = xs(rng), x1 = xs(rng), y0 = ys(rng), y1 = ys(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const Rgb c = random_rgb(rng);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) img.set(x, y, c);
  }
  std::uniform_int_distribution<int> noise(-6, 6);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Rgb p = img(x, y);
      const auto j = [&](std::uint8_t v) {
        return std::uint8_t(std::clamp(int(v) + noise(rng), 0, 255));
      };
      img.set(x, y, {j(p.r), j(p.g), j(p.b)});
    }
  return img;
}

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double p = 0.5) {
  BinaryMask m(w, h);
  std::bernoulli_distribution d(p);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.set(i, d(rng));
  return m;
}

} // namespace bowfire::testing

#include <queue>
#include <string>

#include "bowfire/superpixel.hpp"

namespace bowfire::testing {

/// Empty when `part` is a disjoint cover of a w x h image by 4-connected,
/// densely numbered regions; otherwise a description of the first defect.
inline std::string partition_defect(const SuperpixelPartition& part, int w, int h) {
  const int n = w * h;
  if (part.width != w || part.height != h) return "shape";
  if (static_cast<int>(part.labels.size()) != n) return "label count";
  const int regions = part.region_count();
  std::vector<int> seen(static_cast<std::size_t>(regions), 0);
  for (int i = 0; i < n; ++i) {
    const int l = part.labels[i];
    if (l < 0 || l >= regions) return "label out of range";
    ++seen[l];
  }
  for (int r = 0; r < regions; ++r) {
    if (seen[r] == 0) return "unused id " + std::to_string(r);
    if (static_cast<int>(part.members[r].size()) != seen[r]) return "members size";
    for (int i : part.members[r])
      if (part.labels[i] != r) return "members mismatch";
  }
  // Flood fill each region from its first member.
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < regions; ++r) {
    std::queue<int> q;
    q.push(part.members[r].front());
    visited[part.members[r].front()] = 1;
    int reached = 0;
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      ++reached;
      const int x = i % w, y = i / w;
      const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
      for (const auto& p : nb) {
        if (p[0] < 0 || p[0] >= w || p[1] < 0 || p[1] >= h) continue;
        const int j = p[1] * w + p[0];
        if (!visited[j] && part.labels[j] == r) {
          visited[j] = 1;
          q.push(j);
        }
      }
    }
    if (reached != seen[r]) return "region " + std::to_string(r) + " not 4-connected";
  }
  return {};
}

} // namespace bowfire::testing
