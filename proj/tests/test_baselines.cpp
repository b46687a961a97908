#include <algorithm>
#include <limits>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "bowfire/baselines.hpp"
#include "bowfire/errors.hpp"

using namespace bowfire;

namespace {

double within_ss(const std::vector<double>& v, const std::vector<int>& assignment, int k) {
  std::vector<double> sum(k, 0), n(k, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum[assignment[i]] += v[i];
    n[assignment[i]] += 1;
  }
  double ss = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mean = sum[assignment[i]] / n[assignment[i]];
    ss += (v[i] - mean) * (v[i] - mean);
  }
  return ss;
}

// Exhaustive scan of every threshold between consecutive sorted values.
double best_threshold_ss(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t cut = 1; cut < v.size(); ++cut) {
    if (v[cut] == v[cut - 1]) continue;
    std::vector<int> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = i < cut ? 0 : 1;
    best = std::min(best, within_ss(v, a, 2));
  }
  return best;
}

} // namespace

TEST_CASE("kmeans examples") {
  const std::vector<double> v{0, 0, 0, 10, 10, 10};
  const auto r = kmeans_1d(v, 2);
  CHECK(r.means == std::vector<double>{0, 10});
  CHECK(r.assignment == std::vector<int>{0, 0, 0, 1, 1, 1});

  const std::vector<double> d{5, 1, 3, 1, 5, 3, 7};
  const auto each = kmeans_1d(d, 4);
  CHECK(each.means == std::vector<double>{1, 3, 5, 7});
  CHECK(each.assignment == std::vector<int>{2, 0, 1, 0, 2, 1, 3});
}

TEST_CASE("kmeans errors") {
  const std::vector<double> v{1, 1, 2};
  CHECK_THROWS_AS(kmeans_1d(v, 3), DegenerateInput);
  CHECK_THROWS_AS(kmeans_1d(v, 0), ParameterError);
  CHECK_THROWS_AS(kmeans_1d({}, 1), DegenerateInput);
}

TEST_CASE("two-cluster split is as good as the best threshold") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 64)(rng);
    std::vector<double> v(n);
    const int spread = std::uniform_int_distribution<int>(1, 255)(rng);
    for (auto& x : v) x = std::uniform_int_distribution<int>(0, spread)(rng);
    if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; })) continue;
    const auto r = kmeans_1d(v, 2);
    INFO("trial " << trial);
    REQUIRE(within_ss(v, r.assignment, 2) <= best_threshold_ss(v) + 1e-9);
  }
}

TEST_CASE("assignments are order-isotone") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> v(100);
    for (auto& x : v) x = std::uniform_int_distribution<int>(0, 255)(rng);
    const auto r = kmeans_1d(v, k);
    REQUIRE(std::is_sorted(r.means.begin(), r.means.end()));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[i] < v[j]) REQUIRE(r.assignment[i] <= r.assignment[j]);
  }
}

TEST_CASE("rossi marks the red half of a red/black image") {
  ImageRGB img(10, 6, Rgb{0, 0, 0});
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 5; ++x) img.set(x, y, {255, 0, 0});
  const BinaryMask m = cluster_segment(img, kRossiSpec);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) CHECK(m(x, y) == (x < 5));
}

TEST_CASE("rudz needs four distinct cb values") {
  CHECK_THROWS_AS(cluster_segment(ImageRGB(5, 5, Rgb{200, 100, 0}), kRudzSpec), DegenerateInput);
}

TEST_CASE("cluster segmentation is deterministic") {
  std::mt19937_64 rng(43);
  const ImageRGB img = testing::random_image(rng, 30, 20);
  CHECK(cluster_segment(img, kRossiSpec) == cluster_segment(img, kRossiSpec));
  CHECK(cluster_segment(img, kRudzSpec) == cluster_segment(img, kRudzSpec));
}

TEST_CASE("cluster channels") {
  const ImageRGB img(1, 1, Rgb{255, 0, 0});
  CHECK(cluster_channel(img, ClusterChannel::YCbCrCb)[0] == 85.0);
  CHECK(cluster_channel(img, ClusterChannel::YuvV)[0] == doctest::Approx(rgb_to_yuv_v({255, 0, 0})));
}
