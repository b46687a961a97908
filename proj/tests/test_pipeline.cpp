#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "bowfire/errors.hpp"
#include "bowfire/eval.hpp"
#include "bowfire/model_file.hpp"
#include "bowfire/pipeline.hpp"
#include "bowfire/synthetic.hpp"

using namespace bowfire;

namespace {

const synthetic::Corpus& corpus() {
  static const synthetic::Corpus c = synthetic::make_corpus({7, 6, 6, 80, 160});
  return c;
}

const BowfireModel& model() {
  static const BowfireModel m = train_model(corpus().train_fire, corpus().train_non_fire, {});
  return m;
}

} // namespace

TEST_CASE("one patch per class still trains, with k reduced") {
  std::vector<std::string> warnings;
  const BowfireModel m = train_model(std::span(corpus().train_fire).first(1),
                                     std::span(corpus().train_non_fire).first(1), {}, &warnings);
  CHECK(m.texture.size() == 2);
  CHECK(m.texture.k() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("standard training set") {
  const BowfireModel& m = model();
  CHECK(m.texture.size() == 240);
  CHECK(m.texture.k() == 11);
  CHECK(m.color.bins() == 32);
  // 80 x 2500 fire pixels against 160 x 2500 others.
  CHECK(std::exp(m.color.log_prior()(1)) == doctest::Approx(1.0 / 3));
  CHECK(std::exp(m.color.log_prior()(0)) == doctest::Approx(2.0 / 3));
  CHECK(m.slic == SlicParams{});
}

TEST_CASE("retraining is byte identical") {
  const BowfireModel again = train_model(corpus().train_fire, corpus().train_non_fire, {});
  CHECK(serialize_model(again) == serialize_model(model()));
}

TEST_CASE("training needs both classes") {
  CHECK_THROWS_AS(train_model(corpus().train_fire, {}, {}), TrainingError);
}

TEST_CASE("modes delegate and fuse by intersection") {
  std::mt19937_64 rng(51);
  for (const auto& scene : corpus().fire) {
    const ImageRGB& img = scene.image;
    const BinaryMask color = detect(model(), img, DetectionMode::ColorOnly);
    const BinaryMask texture = detect(model(), img, DetectionMode::TextureOnly);
    const BinaryMask fused = detect(model(), img, DetectionMode::Fused);
    CHECK(color == classify_image_color(model().color, img));
    CHECK(texture == classify_image_texture(model().texture, img, model().slic));
    CHECK(fused == mask_and(color, texture));
    CHECK(fused.popcount() <= std::min(color.popcount(), texture.popcount()));

    const BranchMasks b = detect_branches(model(), img);
    CHECK(b.color == color);
    CHECK(b.texture == texture);
    CHECK(b.fused == fused);

    for (const BinaryMask& truth :
         {scene.truth, testing::random_mask(rng, img.width(), img.height())}) {
      const auto cf = confusion(fused, truth), cc = confusion(color, truth),
                 ct = confusion(texture, truth);
      CHECK(cf.fp <= std::min(cc.fp, ct.fp));
      CHECK(cf.tp <= std::min(cc.tp, ct.tp));
    }
  }
}

TEST_CASE("run_methods matches the individual detectors") {
  const ImageRGB& img = corpus().non_fire[0].image;
  const auto masks = run_methods(model(), img, all_methods());
  REQUIRE(masks.size() == all_methods().size());
  CHECK(masks[0] == detect(model(), img, DetectionMode::ColorOnly));
  CHECK(masks[1] == detect(model(), img, DetectionMode::TextureOnly));
  CHECK(masks[2] == detect(model(), img, DetectionMode::Fused));
  CHECK(masks[3] == cluster_segment(img, kRossiSpec));
  CHECK(masks[4] == cluster_segment(img, kRudzSpec));
  CHECK(masks[5] == mask_and(masks[3], masks[1]));
  CHECK(masks[6] == mask_and(masks[4], masks[1]));
}

TEST_CASE("degenerate clustering becomes an empty mask with a warning") {
  const ImageRGB flat(20, 20, Rgb{200, 90, 10});
  std::vector<std::string> warnings;
  const auto masks = run_methods(model(), flat, {Method::RudzCluster}, &warnings);
  CHECK(masks[0].popcount() == 0);
  CHECK(warnings.size() == 1);
}

TEST_CASE("mode and method names") {
  for (auto m : {DetectionMode::ColorOnly, DetectionMode::TextureOnly, DetectionMode::Fused})
    CHECK(parse_mode(to_string(m)) == m);
  CHECK(to_string(DetectionMode::Fused) == "fused");
  CHECK_FALSE(parse_mode("both"));
  for (auto m : all_methods()) CHECK(parse_method(to_string(m)) == m);
  CHECK(all_methods().size() == 7);
}
