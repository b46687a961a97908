#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bowfire/pipeline.hpp"

namespace bowfire {

/// Tunables shared by all commands. Read from a `key = value` file (with `#`
/// comments) and then overridden from the command line.
struct Config {
  int bins = 32;
  int k = 11;
  double m = 40.0;
  int ksp = 150;
  int iterations = 10;
  int patch_size = 50;  ///< 0 accepts training patches of any size
  std::string seed_order = "raster";

  TrainOptions train_options() const;
  SlicParams slic() const { return {ksp, m, iterations}; }
};

/// Sets one key; throws ParameterError for unknown keys or bad values.
void apply_setting(Config& config, std::string_view key, std::string_view value);

Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});

} // namespace bowfire
