#include "bowfire/eval.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <exception>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace bowfire {

using nlohmann::json;

namespace {

constexpr std::string_view kClusterNote = "clustering step only";

bool is_cluster_method(Method m) {
  return m == Method::RossiCluster || m == Method::RudzCluster ||
         m == Method::RossiClusterTexture || m == Method::RudzClusterTexture;
}

std::optional<double> ratio(long long num, long long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results keep input
// order; the lowest-index failure is rethrown after all workers finish.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, int jobs, Fn fn) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

struct Item {
  std::size_t dataset;
  std::size_t index;
};

std::vector<Item> flatten(std::span<const Dataset> datasets) {
  std::vector<Item> items;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    if (datasets[d].size() == 0)
      throw std::invalid_argument("dataset '" + std::string(to_string(datasets[d].tag)) +
                                  "' has no images");
    for (std::size_t i = 0; i < datasets[d].size(); ++i) items.push_back({d, i});
  }
  return items;
}

Sample load_checked(const Dataset& ds, std::size_t i) {
  Sample s = ds.load(i);
  if (s.truth.width() != s.image.width() || s.truth.height() != s.image.height())
    throw DimensionMismatch("ground truth of '" + ds.names[i] +
                            "' does not match the image dimensions");
  return s;
}

struct ItemResult {
  std::vector<ConfusionMatrix> matrices;
  std::vector<std::string> warnings;
};

// Per-dataset reports for each column, then a pooled Complete report per
// column when several datasets are present.
std::vector<EvalReport> reduce(std::span<const Dataset> datasets, const std::vector<Item>& items,
                               const std::vector<ItemResult>& results, std::size_t column,
                               const std::string& method, const EvalParams& params,
                               const std::string& note, std::vector<EvalReport>* complete) {
  std::vector<EvalReport> out;
  std::vector<ConfusionMatrix> all;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    std::vector<ConfusionMatrix> per_image;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (items[i].dataset == d) per_image.push_back(results[i].matrices[column]);
    const ConfusionMatrix m = aggregate(per_image);
    all.push_back(m);
    out.push_back(make_report(m, datasets[d].tag, method, params, note));
  }
  if (datasets.size() > 1)
    complete->push_back(make_report(aggregate(all), DatasetTag::Complete, method, params, note));
  return out;
}

void collect_warnings(const std::vector<ItemResult>& results, std::vector<std::string>* sink) {
  if (!sink) return;
  for (const auto& r : results) sink->insert(sink->end(), r.warnings.begin(), r.warnings.end());
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string fixed(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

} // namespace

ConfusionMatrix confusion(const BinaryMask& pred, const BinaryMask& truth) {
  if (!pred.same_shape(truth))
    throw DimensionMismatch("confusion: prediction and truth differ in shape");
  const auto& p = pred.bits();
  const auto& t = truth.bits();
  ConfusionMatrix m;
  m.tp = (p && t).count();
  m.fp = (p && !t).count();
  m.fn = (!p && t).count();
  m.tn = (!p && !t).count();
  return m;
}

ConfusionMatrix aggregate(std::span<const ConfusionMatrix> matrices) {
  if (matrices.empty()) throw std::invalid_argument("aggregate: empty matrix list");
  ConfusionMatrix sum;
  for (const auto& m : matrices) sum += m;
  return sum;
}

Metrics metrics(const ConfusionMatrix& m) {
  Metrics out;
  // Without positive ground truth every detection is a false alarm and
  // precision says nothing beyond FPR, so it is left undefined.
  if (m.tp + m.fn > 0) out.precision = ratio(m.tp, m.tp + m.fp);
  out.recall = ratio(m.tp, m.tp + m.fn);
  out.fpr = ratio(m.fp, m.fp + m.tn);
  if (out.precision && out.recall && *out.precision + *out.recall > 0.0)
    out.f1 = 2.0 * *out.precision * *out.recall / (*out.precision + *out.recall);
  return out;
}

std::string_view to_string(DatasetTag tag) {
  switch (tag) {
    case DatasetTag::Fire: return "fire";
    case DatasetTag::NonFire: return "non-fire";
    case DatasetTag::Complete: return "complete";
  }
  return "?";
}

std::optional<DatasetTag> parse_dataset_tag(std::string_view text) {
  for (auto tag : {DatasetTag::Fire, DatasetTag::NonFire, DatasetTag::Complete})
    if (to_string(tag) == text) return tag;
  return std::nullopt;
}

EvalParams EvalParams::of(const BowfireModel& model) {
  return {model.slic.k_sp, model.slic.m, model.texture.k(), model.color.bins()};
}

EvalReport make_report(const ConfusionMatrix& matrix, DatasetTag dataset, std::string method,
                       const EvalParams& params, std::string note) {
  return {matrix, metrics(matrix), dataset, std::move(method), params, std::move(note)};
}

Dataset Dataset::in_memory(DatasetTag tag, std::vector<Sample> samples) {
  Dataset ds;
  ds.tag = tag;
  for (std::size_t i = 0; i < samples.size(); ++i) ds.names.push_back("#" + std::to_string(i));
  auto shared = std::make_shared<const std::vector<Sample>>(std::move(samples));
  ds.load = [shared](std::size_t i) { return (*shared)[i]; };
  return ds;
}

std::vector<EvalReport> evaluate(const BowfireModel& model, std::span<const Dataset> datasets,
                                 const std::vector<Method>& methods,
                                 const EvalOptions& options) {
  const auto items = flatten(datasets);
  const auto results = parallel_map<ItemResult>(items.size(), options.jobs, [&](std::size_t i) {
    const Dataset& ds = datasets[items[i].dataset];
    const Sample s = load_checked(ds, items[i].index);
    ItemResult r;
    std::vector<std::string> raw;
    const auto masks = run_methods(model, s.image, methods, &raw);
    for (const auto& mask : masks) r.matrices.push_back(confusion(mask, s.truth));
    for (auto& w : raw) r.warnings.push_back(ds.names[items[i].index] + ": " + w);
    return r;
  });
  collect_warnings(results, options.warnings);

  const EvalParams params = EvalParams::of(model);
  std::vector<EvalReport> reports, complete;
  for (std::size_t c = 0; c < methods.size(); ++c) {
    const std::string note = is_cluster_method(methods[c]) ? std::string(kClusterNote) : "";
    auto part = reduce(datasets, items, results, c, std::string(to_string(methods[c])), params,
                       note, &complete);
    reports.insert(reports.end(), part.begin(), part.end());
  }
  reports.insert(reports.end(), complete.begin(), complete.end());
  return reports;
}

std::vector<EvalReport> sweep_ksp(const BowfireModel& model, std::span<const Dataset> datasets,
                                  std::span<const int> ksp_values, const EvalOptions& options) {
  if (ksp_values.empty()) throw std::invalid_argument("sweep_ksp: empty K_sp list");
  std::vector<BowfireModel> variants;
  for (int ksp : ksp_values) {
    BowfireModel v = model;
    v.slic.k_sp = ksp;
    variants.push_back(std::move(v));
  }

  const auto items = flatten(datasets);
  const auto results = parallel_map<ItemResult>(items.size(), options.jobs, [&](std::size_t i) {
    const Sample s = load_checked(datasets[items[i].dataset], items[i].index);
    const BinaryMask color = classify_image_color(model.color, s.image);
    ItemResult r;
    for (const auto& v : variants) {
      const BinaryMask texture = classify_image_texture(v.texture, s.image, v.slic);
      r.matrices.push_back(confusion(mask_and(color, texture), s.truth));
    }
    return r;
  });

  std::vector<EvalReport> reports;
  for (std::size_t c = 0; c < variants.size(); ++c) {
    std::vector<EvalReport> complete;
    auto part = reduce(datasets, items, results, c, std::string(to_string(Method::Fused)),
                       EvalParams::of(variants[c]), "", &complete);
    reports.insert(reports.end(), part.begin(), part.end());
    reports.insert(reports.end(), complete.begin(), complete.end());
  }
  return reports;
}

std::vector<RocPoint> roc_points(std::span<const EvalReport> reports,
                                 std::vector<std::string>* warnings) {
  std::vector<RocPoint> out;
  for (const auto& r : reports) {
    if (!r.metrics.fpr || !r.metrics.recall) {
      if (warnings)
        warnings->push_back("no ROC point for " + r.method + " on " +
                            std::string(to_string(r.dataset)) + ": undefined recall or FPR");
      continue;
    }
    out.push_back({*r.metrics.fpr, *r.metrics.recall});
  }
  return out;
}

json to_json(const EvalReport& r) {
  json j;
  j["method"] = r.method;
  j["dataset"] = std::string(to_string(r.dataset));
  j["params"] = {{"ksp", r.params.k_sp}, {"m", r.params.m}, {"k", r.params.k},
                 {"bins", r.params.bins}};
  j["matrix"] = {{"tp", r.matrix.tp}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn},
                 {"tn", r.matrix.tn}};
  j["precision"] = optional_number(r.metrics.precision);
  j["recall"] = optional_number(r.metrics.recall);
  j["f1"] = optional_number(r.metrics.f1);
  j["fpr"] = optional_number(r.metrics.fpr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  r.method = j.at("method").get<std::string>();
  const auto tag = parse_dataset_tag(j.at("dataset").get<std::string>());
  if (!tag) throw FormatError("unknown dataset tag in report");
  r.dataset = *tag;
  const auto& p = j.at("params");
  r.params = {p.at("ksp").get<int>(), p.at("m").get<double>(), p.at("k").get<int>(),
              p.at("bins").get<int>()};
  const auto& m = j.at("matrix");
  r.matrix = {m.at("tp").get<long long>(), m.at("fp").get<long long>(),
              m.at("fn").get<long long>(), m.at("tn").get<long long>()};
  r.metrics = {read_optional(j, "precision"), read_optional(j, "recall"), read_optional(j, "f1"),
               read_optional(j, "fpr")};
  r.note = j.value("note", "");
  return r;
}

json reports_to_json(std::span<const EvalReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {{"format_version", 1}, {"reports", arr}};
}

std::string reports_to_text(std::span<const EvalReport> reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-9s %5s %12s %12s %12s %12s %9s %9s %9s %9s\n",
                "method", "dataset", "ksp", "tp", "fp", "fn", "tn", "precision", "recall", "f1",
                "fpr");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-22s %-9s %5d %12lld %12lld %12lld %12lld %9s %9s %9s %9s\n",
                  r.method.c_str(), std::string(to_string(r.dataset)).c_str(), r.params.k_sp,
                  r.matrix.tp, r.matrix.fp, r.matrix.fn, r.matrix.tn,
                  fixed(r.metrics.precision).c_str(), fixed(r.metrics.recall).c_str(),
                  fixed(r.metrics.f1).c_str(), fixed(r.metrics.fpr).c_str());
    out << line;
  }
  if (std::ranges::any_of(reports, [](const auto& r) { return !r.note.empty(); }))
    out << "(cluster methods: " << kClusterNote << ")\n";
  return out.str();
}

std::string roc_to_csv(std::span<const RocPoint> points) {
  std::string out = "fpr,recall\n";
  for (const auto& p : points) out += json(p.fpr).dump() + "," + json(p.recall).dump() + "\n";
  return out;
}

std::string sweep_to_csv(std::span<const EvalReport> reports) {
  std::string out = "ksp,dataset,precision,recall,f1,fpr\n";
  for (const auto& r : reports) {
    out += std::to_string(r.params.k_sp) + "," + std::string(to_string(r.dataset)) + "," +
           optional_number(r.metrics.precision).dump() + "," +
           optional_number(r.metrics.recall).dump() + "," +
           optional_number(r.metrics.f1).dump() + "," + optional_number(r.metrics.fpr).dump() +
           "\n";
  }
  return out;
}

} // namespace bowfire
