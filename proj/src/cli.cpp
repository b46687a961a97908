#include "bowfire/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bowfire/config.hpp"
#include "bowfire/dataset_io.hpp"
#include "bowfire/eval.hpp"
#include "bowfire/image_io.hpp"
#include "bowfire/model_file.hpp"

namespace bowfire {

namespace fs = std::filesystem;

namespace {

/// Settings given on the command line, applied after the config file.
struct Overrides {
  std::optional<fs::path> config_file;
  std::map<std::string, std::string> values;

  void add_to(CLI::App& cmd, std::initializer_list<const char*> keys) {
    cmd.add_option("--config", config_file, "key = value settings file");
    for (const char* key : keys) {
      std::string flag = std::string("--") + key;
      for (auto& c : flag)
        if (c == '_') c = '-';
      cmd.add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; },
          std::string("override '") + key + "'");
    }
  }

  Config resolve(Config base) const {
    if (config_file) base = load_config(*config_file, base);
    for (const auto& [k, v] : values) apply_setting(base, k, v);
    return base;
  }
};

struct DatasetFlags {
  std::optional<fs::path> fire, fire_masks, non_fire, non_fire_masks;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--fire", fire, "directory of fire images");
    cmd.add_option("--fire-masks", fire_masks, "ground-truth masks for --fire (required)");
    cmd.add_option("--non-fire", non_fire, "directory of images without fire");
    cmd.add_option("--non-fire-masks", non_fire_masks,
                   "optional masks for --non-fire (default: all negative)");
  }

  std::vector<io::DatasetLayout> layouts() const {
    std::vector<io::DatasetLayout> out;
    if (fire) {
      if (!fire_masks) throw CLI::ValidationError("--fire requires --fire-masks");
      out.push_back({*fire, fire_masks, DatasetTag::Fire});
    }
    if (non_fire) out.push_back({*non_fire, non_fire_masks, DatasetTag::NonFire});
    if (out.empty()) throw CLI::ValidationError("give at least one of --fire / --non-fire");
    return out;
  }
};

Config config_of(const BowfireModel& model) {
  Config c;
  c.bins = model.color.bins();
  c.k = model.texture.k();
  c.ksp = model.slic.k_sp;
  c.m = model.slic.m;
  c.iterations = model.slic.iterations;
  return c;
}

// Applies inference-time overrides to a loaded model.
BowfireModel with_overrides(BowfireModel model, const Overrides& ov) {
  const Config c = ov.resolve(config_of(model));
  if (c.bins != model.color.bins())
    throw ParameterError("bins is fixed by the trained model (" +
                         std::to_string(model.color.bins()) + ")");
  model.slic = c.slic();
  if (c.k != model.texture.k())
    model.texture = TextureModel(model.texture.features(), model.texture.labels(), c.k);
  return model;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

// Opens every layout; empty directories are dropped with a warning.
std::vector<Dataset> open_datasets(const DatasetFlags& flags, std::ostream& err) {
  std::vector<Dataset> out;
  for (const auto& layout : flags.layouts()) {
    Dataset ds = io::open_dataset(layout);
    if (ds.size() == 0) {
      err << "warning: no images in '" << layout.images_dir.string() << "'\n";
      continue;
    }
    out.push_back(std::move(ds));
  }
  return out;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"BoWFire still-image fire detector", "bowfire"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train color and texture models from patches");
  fs::path train_fire, train_other, train_output;
  Overrides train_ov;
  train->add_option("--fire", train_fire, "directory of fire patches")->required();
  train->add_option("--non-fire", train_other, "directory of non-fire patches")->required();
  train->add_option("-o,--output", train_output, "model file to write")->required();
  train_ov.add_to(*train, {"bins", "k", "m", "ksp", "iterations", "patch_size", "seed_order"});

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "write the fire mask of one image");
  fs::path det_model, det_input, det_output;
  std::string det_mode = "fused";
  std::optional<fs::path> det_labels, det_overlay;
  Overrides det_ov;
  detect_cmd->add_option("--model", det_model, "model file")->required();
  detect_cmd->add_option("-i,--input", det_input, "input image")->required();
  detect_cmd->add_option("-o,--output", det_output, "mask PNG to write")->required();
  detect_cmd->add_option("--mode", det_mode, "color-only | texture-only | fused");
  detect_cmd->add_option("--labels", det_labels, "also write the superpixel label map (16-bit PNG)");
  detect_cmd->add_option("--overlay", det_overlay, "also write superpixel boundaries over the image");
  det_ov.add_to(*detect_cmd, {"k", "m", "ksp", "iterations"});

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "pixel-level evaluation against ground truth");
  fs::path ev_model;
  DatasetFlags ev_data;
  std::vector<std::string> ev_methods;
  std::optional<fs::path> ev_output, ev_text, ev_roc;
  int ev_jobs = 1;
  Overrides ev_ov;
  eval_cmd->add_option("--model", ev_model, "model file")->required();
  ev_data.add_to(*eval_cmd);
  eval_cmd->add_option("--method", ev_methods,
                       "color-only | texture-only | fused | rossi-cluster | rudz-cluster | "
                       "rossi-cluster+texture | rudz-cluster+texture (repeatable)");
  eval_cmd->add_option("-o,--output", ev_output, "JSON report");
  eval_cmd->add_option("--text", ev_text, "aligned text report");
  eval_cmd->add_option("--roc", ev_roc, "ROC points as fpr,recall CSV");
  eval_cmd->add_option("-j,--jobs", ev_jobs, "worker threads")->check(CLI::PositiveNumber);
  ev_ov.add_to(*eval_cmd, {"k", "m", "ksp", "iterations"});

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "fused-mode evaluation over several K_sp");
  fs::path sw_model;
  DatasetFlags sw_data;
  std::vector<int> sw_ksp = kDefaultKspValues;
  std::optional<fs::path> sw_csv, sw_json;
  int sw_jobs = 1;
  Overrides sw_ov;
  sweep_cmd->add_option("--model", sw_model, "model file")->required();
  sw_data.add_to(*sweep_cmd);
  sweep_cmd->add_option("--ksp", sw_ksp, "comma-separated K_sp list")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--csv", sw_csv, "CSV output (ksp,dataset,precision,recall,f1,fpr)");
  sweep_cmd->add_option("--json", sw_json, "JSON output");
  sweep_cmd->add_option("-j,--jobs", sw_jobs, "worker threads")->check(CLI::PositiveNumber);
  sw_ov.add_to(*sweep_cmd, {"k", "m", "iterations"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (train->parsed()) {
      const Config cfg = train_ov.resolve({});
      const auto patches = io::load_training({train_fire, train_other, cfg.patch_size});
      std::vector<std::string> warnings;
      const BowfireModel model =
          train_model(patches.fire, patches.not_fire, cfg.train_options(), &warnings);
      print_warnings(warnings, err);
      save_model(train_output, model);
      out << "trained on " << patches.fire.size() << " fire and " << patches.not_fire.size()
          << " non-fire patches; wrote " << train_output.string() << "\n";
      return kExitOk;
    }

    if (detect_cmd->parsed()) {
      const auto mode = parse_mode(det_mode);
      if (!mode) {
        err << "error: unknown mode '" << det_mode << "'\n";
        return kExitUsage;
      }
      const BowfireModel model = with_overrides(load_model(det_model), det_ov);
      const ImageRGB img = io::read_image(det_input);
      const BinaryMask mask = detect(model, img, *mode);
      io::write_mask_png(det_output, mask);
      if (det_labels || det_overlay) {
        const auto part = slic_segment(img, model.slic);
        if (det_labels) io::write_label_png(*det_labels, part.labels, img.width(), img.height());
        if (det_overlay) io::write_png(*det_overlay, overlay_boundaries(img, part));
      }
      char line[64];
      std::snprintf(line, sizeof line, "%.6f\n",
                    static_cast<double>(mask.popcount()) / static_cast<double>(mask.size()));
      out << line;
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      std::vector<Method> methods;
      if (ev_methods.empty()) ev_methods = {"color-only", "texture-only", "fused"};
      for (const auto& name : ev_methods) {
        const auto m = parse_method(name);
        if (!m) {
          err << "error: unknown method '" << name << "'\n";
          return kExitUsage;
        }
        methods.push_back(*m);
      }
      const BowfireModel model = with_overrides(load_model(ev_model), ev_ov);
      const auto datasets = open_datasets(ev_data, err);
      if (datasets.empty()) {
        err << "error: evaluation found no images\n";
        return kExitNoData;
      }
      std::vector<std::string> warnings;
      const auto reports = evaluate(model, datasets, methods, {ev_jobs, &warnings});
      print_warnings(warnings, err);
      const std::string text = reports_to_text(reports);
      out << text;
      if (ev_output) write_text(*ev_output, reports_to_json(reports).dump(2) + "\n");
      if (ev_text) write_text(*ev_text, text);
      if (ev_roc) {
        std::vector<std::string> skipped;
        write_text(*ev_roc, roc_to_csv(roc_points(reports, &skipped)));
        print_warnings(skipped, err);
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const BowfireModel model = with_overrides(load_model(sw_model), sw_ov);
      const auto datasets = open_datasets(sw_data, err);
      if (datasets.empty()) {
        err << "error: evaluation found no images\n";
        return kExitNoData;
      }
      const auto reports = sweep_ksp(model, datasets, sw_ksp, {sw_jobs, nullptr});
      out << reports_to_text(reports);
      if (sw_csv) write_text(*sw_csv, sweep_to_csv(reports));
      if (sw_json) write_text(*sw_json, reports_to_json(reports).dump(2) + "\n");
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace bowfire
