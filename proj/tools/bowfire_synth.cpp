#include <cstdint>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "bowfire/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic fire / fire-like corpus with exact masks", "bowfire-synth"};
  std::filesystem::path out;
  bowfire::synthetic::CorpusOptions opts;
  app.add_option("-o,--output", out, "root directory to create")->required();
  app.add_option("--seed", opts.seed, "generator seed");
  app.add_option("--fire", opts.fire_images, "number of fire scenes");
  app.add_option("--non-fire", opts.non_fire_images, "number of distractor scenes");
  app.add_option("--train-fire", opts.train_fire, "number of fire training patches");
  app.add_option("--train-non-fire", opts.train_non_fire, "number of non-fire training patches");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    bowfire::synthetic::write_corpus(out, bowfire::synthetic::make_corpus(opts));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << "wrote corpus to " << out.string() << "\n";
  return 0;
}
