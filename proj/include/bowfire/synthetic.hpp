#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bowfire/imaging.hpp"

namespace bowfire::synthetic {

// Procedural fire / fire-like scenes with exact ground truth. Fire is a set
// of irregular flame-colored blobs with strong pixel-level texture; the
// distractors are noise-free red/orange/yellow discs and linear gradients
// over a smooth low-frequency background. All randomness comes from a seeded
// splitmix64 stream, so a seed reproduces the same pixels on every platform.

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                     ///< [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);      ///< inclusive
  double normal();                      ///< standard normal (Box-Muller)

private:
  std::uint64_t state_;
};

struct Scene {
  ImageRGB image;
  BinaryMask truth;
};

Scene fire_scene(Rng& rng);
Scene distractor_scene(Rng& rng);

ImageRGB fire_patch(Rng& rng, int size = 50);
/// Background, disc or gradient crop, cycling on `variant`.
ImageRGB non_fire_patch(Rng& rng, int variant, int size = 50);

struct Corpus {
  std::vector<Scene> fire;
  std::vector<Scene> non_fire;
  std::vector<ImageRGB> train_fire;
  std::vector<ImageRGB> train_non_fire;
};

struct CorpusOptions {
  std::uint64_t seed = 2015;
  int fire_images = 100;
  int non_fire_images = 100;
  int train_fire = 80;
  int train_non_fire = 160;
};

Corpus make_corpus(const CorpusOptions& options = {});

/// Writes the documented directory layout under `root`:
///   train/fire, train/non_fire            50x50 patches
///   fire/images, fire/masks               scenes and 0/255 masks
///   non_fire/images                       scenes without fire (no masks)
void write_corpus(const std::filesystem::path& root, const Corpus& corpus);

} // namespace bowfire::synthetic
