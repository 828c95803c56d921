#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlosbench/features.hpp"
#include "nlosbench/learn.hpp"
#include "nlosbench/types.hpp"

#include <nlohmann/json_fwd.hpp>

// Metrics, 10-fold cross-validation, and the training-size robustness
// experiment. NLoS is the positive class.
namespace nlosbench::eval {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Ratios with a zero denominator are nullopt (reported as "n/a" / JSON
/// null), never 0 or NaN.
struct MetricsReport {
  ConfusionMatrix matrix;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> fpr;
};

/// Throws LengthMismatch / EmptyInput.
MetricsReport compute_metrics(const std::vector<Condition>& truth,
                              const std::vector<Condition>& predicted);

/// Seeded shuffle of 0..n-1 cut into k contiguous chunks: disjoint,
/// covering, sizes differing by at most one (larger folds first).
/// shuffle=false keeps temporal order. Throws KTooLarge when k > n and
/// EmptyInput when k == 0.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n_samples,
                                                  std::size_t k,
                                                  std::uint64_t seed,
                                                  bool shuffle = true);

enum class ModelKind { Nb, Svm };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view text);

struct EvalOptions {
  std::size_t folds = 10;
  bool shuffle = true;  // false = temporal blocks; reports record the mode
  std::uint64_t seed = 0;
  double var_smoothing = 1e-9;
  learn::SvmTrainOptions svm{};
  std::string scenario_tag;
};

struct Aggregate {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample standard deviation over folds
  std::size_t count = 0;         // folds where the metric was defined
};

struct CvReport {
  ModelKind model = ModelKind::Nb;
  std::string scenario;
  bool shuffled = true;
  std::size_t requested_folds = 0;
  std::vector<MetricsReport> folds;           // evaluated folds, in order
  std::vector<std::size_t> skipped_folds;     // single-class training unions
  Aggregate accuracy, precision, recall, fpr;
};

/// Trains k models, each evaluated on its held-out fold. Folds whose
/// training union is single-class are skipped with a warning and excluded
/// from aggregation. Training errors are rethrown annotated with the fold
/// index.
CvReport cross_validate(const std::vector<features::FeatureSample>& samples,
                        ModelKind kind, const EvalOptions& options);

struct RobustnessSplit {
  std::vector<std::size_t> validation;              // fixed 10% of the set
  std::vector<std::vector<std::size_t>> subsets;    // 10 slices of the pool
};

/// The 90/10 split behind the robustness experiment, exposed so tests can
/// check that every step reuses the same validation indices.
RobustnessSplit robustness_split(std::size_t n_samples, std::uint64_t seed,
                                 bool shuffle = true);

struct RobustnessPoint {
  double training_fraction = 0.0;  // of the full sample set: 0.09 * step
  double accuracy = 0.0;
};

struct RobustnessCurve {
  ModelKind model = ModelKind::Nb;
  std::string scenario;
  bool shuffled = true;
  std::string validation_id;  // hash of the fixed validation index set
  std::size_t validation_size = 0;
  std::vector<RobustnessPoint> points;  // steps j = 1..10
};

/// Step j trains on pool subsets 1..j and evaluates on the fixed
/// validation set. Requires >= 20 samples and both classes.
RobustnessCurve robustness_experiment(
    const std::vector<features::FeatureSample>& samples, ModelKind kind,
    const EvalOptions& options);

// --- serialization and rendering -----------------------------------------

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const CvReport& report);
nlohmann::json to_json(const RobustnessCurve& curve);
CvReport cv_report_from_json(const nlohmann::json& j);

/// Table-shaped summary: one row per scenario, NB/SVM column pairs for
/// accuracy, precision, recall and FPR means.
std::string render_table(const std::vector<CvReport>& reports);
std::string render_csv(const std::vector<CvReport>& reports);

}  // namespace nlosbench::eval
