#include <algorithm>

#include "doctest.h"
#include "support.hpp"

#include "bowfire/errors.hpp"
#include "bowfire/superpixel.hpp"

using namespace bowfire;

TEST_CASE("grid step") {
  CHECK(grid_step(10000, 100) == doctest::Approx(10.0));
  CHECK(grid_step(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("parameter validation") {
  const ImageRGB img(4, 4);
  CHECK_THROWS_AS(slic_segment(img, {17, 40, 10}), ParameterError);
  CHECK_THROWS_AS(slic_segment(img, {0, 40, 10}), ParameterError);
  CHECK_THROWS_AS(slic_segment(img, {4, 0, 10}), ParameterError);
  CHECK_THROWS_AS(slic_segment(img, {4, 40, 0}), ParameterError);
  CHECK_NOTHROW(slic_segment(img, {16, 40, 10}));
}

TEST_CASE("uniform image gives a regular grid") {
  const ImageRGB img(100, 100, Rgb{120, 60, 30});
  const auto part = slic_segment(img, {100, 40, 10});
  CHECK(testing::partition_defect(part, 100, 100).empty());
  CHECK(part.region_count() == 100);
  for (const auto& m : part.members) {
    CHECK(m.size() >= 80);
    CHECK(m.size() <= 120);
  }
}

TEST_CASE("single pixel") {
  const auto part = slic_segment(ImageRGB(1, 1, Rgb{1, 2, 3}), {1, 40, 10});
  CHECK(part.region_count() == 1);
  CHECK(part.labels == std::vector<int>{0});
}

TEST_CASE("two-tone image splits on the tone edge") {
  ImageRGB img(20, 10, Rgb{20, 20, 200});
  for (int y = 0; y < 10; ++y)
    for (int x = 10; x < 20; ++x) img.set(x, y, {230, 200, 20});
  const auto part = slic_segment(img, {2, 1000, 10});
  REQUIRE(part.region_count() == 2);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 20; ++x)
      CHECK(part.labels[y * 20 + x] == part.labels[y * 20 + (x < 10 ? 0 : 19)]);
  CHECK(part.labels[0] != part.labels[19]);
}

TEST_CASE("partition invariants on random images") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = std::uniform_int_distribution<int>(1, 80)(rng);
    const int h = std::uniform_int_distribution<int>(1, 80)(rng);
    const int k = std::uniform_int_distribution<int>(1, std::min(w * h, 200))(rng);
    const ImageRGB img =
        trial % 2 ? testing::random_image(rng, w, h) : testing::blocky_image(rng, w, h);
    const auto part = slic_segment(img, {k, 40, 10});
    INFO("w=" << w << " h=" << h << " k=" << k);
    CHECK(testing::partition_defect(part, w, h).empty());
    CHECK(part.region_count() >= 1);
    CHECK(part.region_count() <= 2 * k);
  }
}

TEST_CASE("deterministic") {
  std::mt19937_64 rng(22);
  const ImageRGB img = testing::blocky_image(rng, 64, 48);
  const auto a = slic_segment(img, {60, 20, 10});
  const auto b = slic_segment(img, {60, 20, 10});
  CHECK(a.labels == b.labels);
}

TEST_CASE("from_labels requires dense ids") {
  CHECK_NOTHROW(SuperpixelPartition::from_labels(2, 1, {1, 0}));
  CHECK_THROWS(SuperpixelPartition::from_labels(2, 1, {0, 2}));
  CHECK_THROWS(SuperpixelPartition::from_labels(2, 1, {0}));
}

TEST_CASE("boundary overlay paints only region edges") {
  ImageRGB img(4, 2, Rgb{0, 0, 0});
  const auto part = SuperpixelPartition::from_labels(4, 2, {0, 0, 1, 1, 0, 0, 1, 1});
  const ImageRGB out = overlay_boundaries(img, part, {255, 255, 255});
  int painted = 0;
  for (Eigen::Index i = 0; i < out.size(); ++i) painted += out.pixel(i) == Rgb{255, 255, 255};
  CHECK(painted == 2);
  CHECK(out(0, 0) == Rgb{0, 0, 0});
}
