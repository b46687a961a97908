#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bowfire/imaging.hpp"
#include "bowfire/pipeline.hpp"

namespace bowfire {

struct ConfusionMatrix {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;

  long long total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Pixel tally with fire as the positive class.
ConfusionMatrix confusion(const BinaryMask& pred, const BinaryMask& truth);

/// Component-wise sum (micro aggregation). Throws std::invalid_argument on
/// an empty list.
ConfusionMatrix aggregate(std::span<const ConfusionMatrix> matrices);

/// Each metric is empty when its denominator is zero; precision is also
/// empty when the ground truth has no positives.
struct Metrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> fpr;
};

Metrics metrics(const ConfusionMatrix& m);

enum class DatasetTag { Fire, NonFire, Complete };

std::string_view to_string(DatasetTag tag);
std::optional<DatasetTag> parse_dataset_tag(std::string_view text);

struct EvalParams {
  int k_sp = 0;
  double m = 0.0;
  int k = 0;
  int bins = 0;

  static EvalParams of(const BowfireModel& model);
};

struct EvalReport {
  ConfusionMatrix matrix;
  Metrics metrics;
  DatasetTag dataset = DatasetTag::Complete;
  std::string method;
  EvalParams params;
  std::string note;  ///< e.g. "clustering step only"
};

EvalReport make_report(const ConfusionMatrix& matrix, DatasetTag dataset, std::string method,
                       const EvalParams& params, std::string note = {});

/// One evaluation image with ground truth.
struct Sample {
  ImageRGB image;
  BinaryMask truth;
};

/// A tagged corpus; images are produced on demand so large datasets never
/// have to be resident at once.
struct Dataset {
  DatasetTag tag = DatasetTag::Fire;
  std::vector<std::string> names;
  std::function<Sample(std::size_t)> load;

  std::size_t size() const { return names.size(); }

  static Dataset in_memory(DatasetTag tag, std::vector<Sample> samples);
};

struct EvalOptions {
  int jobs = 1;
  std::vector<std::string>* warnings = nullptr;
};

/// Reports per method and dataset, followed by a Complete report per method
/// pooling every dataset when more than one is given. Images are processed
/// concurrently but reduced in input order, so results do not depend on
/// `jobs`.
std::vector<EvalReport> evaluate(const BowfireModel& model, std::span<const Dataset> datasets,
                                 const std::vector<Method>& methods,
                                 const EvalOptions& options = {});

/// Default K_sp grid for sweeps.
inline const std::vector<int> kDefaultKspValues{50, 100, 150, 200, 250, 300};

/// Fused-mode reports for every K_sp, in the same per-dataset layout as
/// `evaluate`, ordered by K_sp.
std::vector<EvalReport> sweep_ksp(const BowfireModel& model, std::span<const Dataset> datasets,
                                  std::span<const int> ksp_values,
                                  const EvalOptions& options = {});

struct RocPoint {
  double fpr = 0.0;
  double recall = 0.0;
};

/// (FPR, recall) per report; reports lacking either metric are skipped with
/// a note in `warnings`.
std::vector<RocPoint> roc_points(std::span<const EvalReport> reports,
                                 std::vector<std::string>* warnings = nullptr);

// Serialization. Undefined metrics are written as null.

nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
nlohmann::json reports_to_json(std::span<const EvalReport> reports);

/// Aligned human-readable table.
std::string reports_to_text(std::span<const EvalReport> reports);

/// `fpr,recall` rows.
std::string roc_to_csv(std::span<const RocPoint> points);

/// `ksp,dataset,precision,recall,f1,fpr` rows; numbers use the JSON
/// spelling so the CSV parses back to the JSON values exactly.
std::string sweep_to_csv(std::span<const EvalReport> reports);

} // namespace bowfire
