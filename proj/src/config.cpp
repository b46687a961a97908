#include "bowfire/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bowfire {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ParameterError("config: bad value '" + std::string(value) + "' for '" +
                         std::string(key) + "'");
  return out;
}

} // namespace

TrainOptions Config::train_options() const { return {bins, k, slic()}; }

void apply_setting(Config& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "bins")
    config.bins = parse_number<int>(key, value);
  else if (key == "k")
    config.k = parse_number<int>(key, value);
  else if (key == "m")
    config.m = parse_number<double>(key, value);
  else if (key == "ksp")
    config.ksp = parse_number<int>(key, value);
  else if (key == "iterations")
    config.iterations = parse_number<int>(key, value);
  else if (key == "patch_size")
    config.patch_size = parse_number<int>(key, value);
  else if (key == "seed_order") {
    // Only row-major grid seeding is implemented.
    if (value != "raster")
      throw ParameterError("config: unsupported seed_order '" + std::string(value) + "'");
    config.seed_order = value;
  } else {
    throw ParameterError("config: unknown key '" + std::string(key) + "'");
  }
}

Config parse_config(std::string_view text, Config base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ParameterError("config line " + std::to_string(number) + ": expected key = value");
    apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
  }
  return base;
}

Config load_config(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

} // namespace bowfire
