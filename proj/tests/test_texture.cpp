#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "bowfire/errors.hpp"
#include "bowfire/texture.hpp"

using namespace bowfire;

namespace {

int transitions(int code) {
  int t = 0;
  for (int i = 0; i < 8; ++i) t += ((code >> i) & 1) != ((code >> ((i + 1) % 8)) & 1);
  return t;
}

// Full sort of every training distance, ties by index, then majority.
Label knn_oracle(const FeatureMatrix& train, const std::vector<Label>& labels, int k,
                 const LbpHistogram& q) {
  std::vector<std::pair<double, int>> d;
  for (Eigen::Index i = 0; i < train.rows(); ++i) {
    double s = 0;
    for (int j = 0; j < kLbpBins; ++j) s += std::abs(train(i, j) - q(j));
    d.emplace_back(s, static_cast<int>(i));
  }
  std::sort(d.begin(), d.end());
  int fire = 0;
  for (int i = 0; i < k; ++i) fire += labels[d[i].second] == Label::Fire;
  return 2 * fire > k ? Label::Fire : Label::NotFire;
}

// Histogram with dyadic entries drawn from a few mass patterns, so that
// distances are exact and ties are common.
LbpHistogram dyadic_histogram(std::mt19937_64& rng) {
  LbpHistogram h = LbpHistogram::Zero();
  std::uniform_int_distribution<int> bin(0, 5);
  for (int i = 0; i < 8; ++i) h(bin(rng)) += 0.125;
  return h;
}

Plane<std::uint8_t> luma_of(const std::vector<std::vector<int>>& rows) {
  Plane<std::uint8_t> p(rows.size(), rows[0].size());
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t x = 0; x < rows[0].size(); ++x) p(y, x) = std::uint8_t(rows[y][x]);
  return p;
}

} // namespace

TEST_CASE("lbp code examples") {
  Neighborhood flat;
  flat.fill(7);
  CHECK(lbp_code(flat) == 0);
  // clockwise from top-left: 9 9 9 9 1 1 1 1 around a center of 5
  CHECK(lbp_code({9, 9, 9, 1, 5, 9, 1, 1, 1}) == 240);
  CHECK(lbp_code({1, 1, 1, 1, 0, 1, 1, 1, 1}) == 255);
  // single neighbor set, walking clockwise from the most significant bit
  const int order[8] = {0, 1, 2, 5, 8, 7, 6, 3};
  for (int bit = 0; bit < 8; ++bit) {
    Neighborhood n;
    n.fill(0);
    n[4] = 1;
    n[order[bit]] = 2;
    CHECK(lbp_code(n) == (0x80 >> bit));
  }
}

TEST_CASE("uniform census") {
  CHECK(is_uniform(0b00000000));
  CHECK(is_uniform(0b11110000));
  CHECK_FALSE(is_uniform(0b10101010));
  int uniform = 0;
  for (int c = 0; c < 256; ++c) {
    CHECK(is_uniform(std::uint8_t(c)) == (transitions(c) <= 2));
    uniform += is_uniform(std::uint8_t(c));
  }
  CHECK(uniform == 58);
  CHECK(kLbpBins == 59);

  const auto& table = uniform_bin_table();
  int next = 0;
  for (int c = 0; c < 256; ++c) {
    if (is_uniform(std::uint8_t(c)))
      CHECK(table[c] == next++);
    else
      CHECK(table[c] == 58);
  }
  CHECK(table[56] == 18);
}

TEST_CASE("codes replicate the border") {
  std::mt19937_64 rng(31);
  Plane<std::uint8_t> luma(6, 9);
  for (Eigen::Index i = 0; i < luma.size(); ++i)
    luma.data()[i] = std::uint8_t(std::uniform_int_distribution<int>(0, 4)(rng));
  const auto codes = lbp_codes(luma);
  const auto at = [&](int y, int x) {
    return luma(std::clamp(y, 0, 5), std::clamp(x, 0, 8));
  };
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 9; ++x) {
      Neighborhood n;
      int k = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) n[k++] = at(y + dy, x + dx);
      REQUIRE(codes(y, x) == lbp_code(n));
    }
}

TEST_CASE("constant image histograms sit in the code-0 bin") {
  const ImageRGB img(12, 10, Rgb{90, 140, 33});
  std::vector<int> labels(120);
  for (int i = 0; i < 120; ++i) labels[i] = (i % 12) / 4;
  const auto part = SuperpixelPartition::from_labels(12, 10, labels);
  for (const auto& h : extract_features(img, part)) {
    CHECK(h(0) == 1.0);
    CHECK(h.sum() == 1.0);
  }
  CHECK(image_histogram(img)(0) == 1.0);
}

TEST_CASE("vertical edge puts mass outside code 0 only where it is") {
  std::vector<std::vector<int>> rows(8, std::vector<int>(8, 50));
  for (auto& r : rows)
    for (int x = 4; x < 8; ++x) r[x] = 200;
  const auto codes = lbp_codes(luma_of(rows));
  // Left of the edge the right-hand column is brighter: bits TR, R, BR.
  for (int y = 0; y < 8; ++y) {
    CHECK(codes(y, 3) == 0b00111000);
    CHECK(codes(y, 4) == 0);
    CHECK(codes(y, 0) == 0);
  }
  std::vector<int> left, middle;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 2; ++x) left.push_back(y * 8 + x);
    for (int x = 2; x < 6; ++x) middle.push_back(y * 8 + x);
  }
  const auto hl = region_histogram(codes, left);
  const auto hm = region_histogram(codes, middle);
  CHECK(hl(0) == 1.0);
  CHECK(hm(0) == 0.75);
  CHECK(hm(18) == 0.25);
}

TEST_CASE("histograms are normalized and translation consistent") {
  std::mt19937_64 rng(32);
  const ImageRGB base = testing::random_image(rng, 20, 16);
  std::vector<int> labels(320);
  for (int i = 0; i < 320; ++i) labels[i] = (i / 20 / 4) * 5 + (i % 20) / 4;
  const auto part = SuperpixelPartition::from_labels(20, 16, labels);
  const auto feats = extract_features(base, part);

  // Same content shifted by (3, 2) inside a larger random canvas.
  ImageRGB big = testing::random_image(rng, 26, 21);
  std::vector<int> big_labels(26 * 21, 0);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 20; ++x) {
      big.set(x + 3, y + 2, base(x, y));
      big_labels[(y + 2) * 26 + x + 3] = labels[y * 20 + x] + 1;
    }
  const auto big_part = SuperpixelPartition::from_labels(26, 21, big_labels);
  const auto big_feats = extract_features(big, big_part);

  for (int ry = 0; ry < 4; ++ry)
    for (int rx = 0; rx < 5; ++rx) {
      const int r = ry * 5 + rx;
      CHECK(feats[r].sum() == doctest::Approx(1.0));
      const bool interior = ry > 0 && ry < 3 && rx > 0 && rx < 4;
      if (interior) CHECK((feats[r].array() == big_feats[r + 1].array()).all());
    }
}

TEST_CASE("l1 distance between normalized histograms is within [0, 2]") {
  std::mt19937_64 rng(33);
  FeatureMatrix train(50, kLbpBins);
  for (int i = 0; i < 50; ++i) train.row(i) = image_histogram(testing::random_image(rng, 8, 8));
  const LbpHistogram q = image_histogram(testing::blocky_image(rng, 8, 8));
  const Eigen::VectorXd d = l1_distances(train, q);
  CHECK(d.minCoeff() >= 0.0);
  CHECK(d.maxCoeff() <= 2.0 + 1e-12);
}

TEST_CASE("knn examples") {
  LbpHistogram fire = LbpHistogram::Zero(), other = LbpHistogram::Zero();
  fire(3) = 1.0;
  other(40) = 1.0;
  FeatureMatrix train(4, kLbpBins);
  train << fire, fire, fire, other;
  const std::vector<Label> labels{Label::Fire, Label::Fire, Label::Fire, Label::NotFire};

  const TextureModel k1(train, labels, 1);
  CHECK(classify_feature(k1, other) == Label::NotFire);
  CHECK(classify_feature(k1, fire) == Label::Fire);

  LbpHistogram near = fire;
  near(3) = 0.9;
  near(4) = 0.1;
  CHECK(classify_feature(TextureModel(train, labels, 3), near) == Label::Fire);
}

TEST_CASE("texture model validation") {
  FeatureMatrix train = FeatureMatrix::Zero(3, kLbpBins);
  const std::vector<Label> labels{Label::Fire, Label::NotFire, Label::Fire};
  CHECK_THROWS_AS(TextureModel(train, labels, 2), ParameterError);
  CHECK_THROWS_AS(TextureModel(train, labels, 5), ParameterError);
  CHECK_THROWS_AS(TextureModel(train, labels, 0), ParameterError);
  CHECK_THROWS_AS(TextureModel(train, {Label::Fire, Label::Fire, Label::Fire}, 1), TrainingError);
  CHECK_NOTHROW(TextureModel(train, labels, 3));
}

TEST_CASE("knn agrees with the brute-force oracle, also under permutation") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 60)(rng);
    FeatureMatrix train(n, kLbpBins);
    std::vector<Label> labels(n);
    for (int i = 0; i < n; ++i) {
      train.row(i) = dyadic_histogram(rng);
      labels[i] = i % 2 ? Label::Fire : Label::NotFire;
    }
    std::vector<int> ks{1};
    if (n >= 3) ks.push_back(3);
    if (n >= 11) ks.push_back(11);
    const LbpHistogram q = dyadic_histogram(rng);
    for (int k : ks) {
      const TextureModel model(train, labels, k);
      REQUIRE(classify_feature(model, q) == knn_oracle(train, labels, k, q));

      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      FeatureMatrix shuffled(n, kLbpBins);
      std::vector<Label> shuffled_labels(n);
      for (int i = 0; i < n; ++i) {
        shuffled.row(i) = train.row(perm[i]);
        shuffled_labels[i] = labels[perm[i]];
      }
      REQUIRE(classify_feature(TextureModel(shuffled, shuffled_labels, k), q) ==
              knn_oracle(shuffled, shuffled_labels, k, q));
    }
  }
}

TEST_CASE("region classification labels whole regions") {
  const ImageRGB img(10, 10, Rgb{200, 120, 40});
  FeatureMatrix train(2, kLbpBins);
  train.row(0) = image_histogram(img);
  LbpHistogram other = LbpHistogram::Zero();
  other(58) = 1.0;
  train.row(1) = other;
  const TextureModel all_fire(train, {Label::Fire, Label::NotFire}, 1);
  CHECK(classify_image_texture(all_fire, img, {4, 40, 10}).popcount() == 100);
  const TextureModel no_fire(train, {Label::NotFire, Label::Fire}, 1);
  CHECK(classify_image_texture(no_fire, img, {4, 40, 10}).popcount() == 0);
}
