#include "bowfire/model_file.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace bowfire {

using nlohmann::json;

namespace {

constexpr const char* kDescriptor = "lbp-u2-59";

json color_to_json(const ColorModel& m) {
  json edges = json::array(), table = json::array();
  for (Eigen::Index c = 0; c < m.bin_edges().rows(); ++c) {
    std::vector<double> row(m.bin_edges().row(c).begin(), m.bin_edges().row(c).end());
    edges.push_back(row);
  }
  for (Eigen::Index r = 0; r < m.log_likelihood().rows(); ++r) {
    std::vector<double> row(m.log_likelihood().row(r).begin(), m.log_likelihood().row(r).end());
    table.push_back(row);
  }
  return {{"bins", m.bins()},
          {"classes", {"not_fire", "fire"}},
          {"channels", {"Y", "Cb", "Cr"}},
          {"bin_edges", edges},
          {"log_prior", {m.log_prior()(0), m.log_prior()(1)}},
          {"log_likelihood", table}};
}

ColorModel color_from_json(const json& j) {
  const int bins = j.at("bins").get<int>();
  if (bins < 1 || bins > 256) throw FormatError("color bins out of range");
  const auto edges_in = j.at("bin_edges").get<std::vector<std::vector<double>>>();
  const auto table_in = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
  const auto prior_in = j.at("log_prior").get<std::vector<double>>();
  if (edges_in.size() != ColorModel::kChannels || prior_in.size() != ColorModel::kClasses ||
      table_in.size() != ColorModel::kClasses * ColorModel::kChannels)
    throw FormatError("color model tables have the wrong shape");

  ColorModel::Edges edges(ColorModel::kChannels, bins + 1);
  for (int c = 0; c < ColorModel::kChannels; ++c) {
    if (edges_in[c].size() != static_cast<std::size_t>(bins) + 1)
      throw FormatError("color model edge row has the wrong length");
    for (int i = 0; i <= bins; ++i) edges(c, i) = edges_in[c][i];
  }
  ColorModel::LogTable table(ColorModel::kClasses * ColorModel::kChannels, bins);
  for (std::size_t r = 0; r < table_in.size(); ++r) {
    if (table_in[r].size() != static_cast<std::size_t>(bins))
      throw FormatError("color model likelihood row has the wrong length");
    for (int b = 0; b < bins; ++b) table(static_cast<Eigen::Index>(r), b) = table_in[r][b];
  }
  return ColorModel(std::move(edges), Eigen::Vector2d(prior_in[0], prior_in[1]),
                    std::move(table));
}

json texture_to_json(const TextureModel& m) {
  json labels = json::array(), features = json::array();
  for (Eigen::Index r = 0; r < m.size(); ++r) {
    labels.push_back(std::string(to_string(m.labels()[r])));
    std::vector<double> row(m.features().row(r).begin(), m.features().row(r).end());
    features.push_back(row);
  }
  return {{"k", m.k()},
          {"distance", "l1"},
          {"descriptor", kDescriptor},
          {"neighbor_order", std::string(kNeighborOrder)},
          {"labels", labels},
          {"features", features}};
}

TextureModel texture_from_json(const json& j) {
  if (j.at("neighbor_order").get<std::string>() != kNeighborOrder)
    throw FormatError("unsupported LBP neighbor order '" +
                      j.at("neighbor_order").get<std::string>() + "'");
  if (j.at("descriptor").get<std::string>() != kDescriptor)
    throw FormatError("unsupported texture descriptor");
  if (j.at("distance").get<std::string>() != "l1")
    throw FormatError("unsupported KNN distance");
  const auto labels_in = j.at("labels").get<std::vector<std::string>>();
  const auto rows = j.at("features").get<std::vector<std::vector<double>>>();
  if (labels_in.size() != rows.size())
    throw FormatError("texture model: labels and features differ in length");

  FeatureMatrix features(static_cast<Eigen::Index>(rows.size()), kLbpBins);
  std::vector<Label> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != static_cast<std::size_t>(kLbpBins))
      throw FormatError("texture feature row must have 59 entries");
    for (int b = 0; b < kLbpBins; ++b) features(static_cast<Eigen::Index>(r), b) = rows[r][b];
    if (labels_in[r] == "fire")
      labels.push_back(Label::Fire);
    else if (labels_in[r] == "not_fire")
      labels.push_back(Label::NotFire);
    else
      throw FormatError("unknown texture label '" + labels_in[r] + "'");
  }
  return TextureModel(std::move(features), std::move(labels), j.at("k").get<int>());
}

} // namespace

json model_to_json(const BowfireModel& model) {
  return {{"format_version", kModelFormatVersion},
          {"slic",
           {{"ksp", model.slic.k_sp},
            {"m", model.slic.m},
            {"iterations", model.slic.iterations},
            {"color_space", "ycbcr-bt601-full"}}},
          {"color", color_to_json(model.color)},
          {"texture", texture_to_json(model.texture)}};
}

BowfireModel model_from_json(const json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw FormatError("unsupported model format_version " + std::to_string(version) +
                        " (this build reads version " + std::to_string(kModelFormatVersion) +
                        ")");
    const auto& s = j.at("slic");
    SlicParams slic{s.at("ksp").get<int>(), s.at("m").get<double>(),
                    s.at("iterations").get<int>()};
    if (slic.k_sp < 1 || !(slic.m > 0.0) || slic.iterations < 1)
      throw FormatError("invalid SLIC parameters in model");
    return {color_from_json(j.at("color")), texture_from_json(j.at("texture")), slic};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid model: ") + e.what());
  } catch (const TrainingError& e) {
    throw FormatError(std::string("invalid model: ") + e.what());
  }
}

std::string serialize_model(const BowfireModel& model) {
  return model_to_json(model).dump() + "\n";
}

BowfireModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

void save_model(const std::filesystem::path& path, const BowfireModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file '" + path.string() + "'");
  out << serialize_model(model);
  if (!out) throw IoError("cannot write model file '" + path.string() + "'");
}

BowfireModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

} // namespace bowfire
