#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "nlosbench/features.hpp"
#include "nlosbench/types.hpp"

#include <nlohmann/json_fwd.hpp>

// The two NLoS detectors, built from first principles: Gaussian Naive
// Bayes and a soft-margin kernel SVM trained with sequential minimal
// optimization. NLoS is the positive class throughout.
namespace nlosbench::learn {

using FeatureVec = Eigen::Vector3d;
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

constexpr int kNumFeatures = 3;
constexpr int kNumClasses = 2;  // row 0 = LoS, row 1 = NLoS

FeatureVec feature_vector(const features::FeatureSample& sample);
FeatureMatrix feature_matrix(const std::vector<features::FeatureSample>& s);

// --- Naive Bayes --------------------------------------------------------

struct NbModel {
  Eigen::Vector2d prior = Eigen::Vector2d::Zero();        // [LoS, NLoS]
  Eigen::Matrix<double, 2, 3> mean = Eigen::Matrix<double, 2, 3>::Zero();
  Eigen::Matrix<double, 2, 3> variance = Eigen::Matrix<double, 2, 3>::Zero();
  double var_smoothing = 1e-9;
};

/// MAP estimation of P(y) and the per-class Gaussian P(x_i|y). Variances
/// are floored at var_smoothing times the largest global feature variance
/// so a constant feature cannot zero a denominator. Throws SingleClass /
/// TooFewSamples (needs both classes and >= 2 samples per class).
NbModel nb_train(const std::vector<features::FeatureSample>& samples,
                 double var_smoothing = 1e-9);

struct NbPrediction {
  Condition label = Condition::LoS;
  double posterior = 0.0;  // normalized probability of the predicted label
};

/// Argmax over classes of log prior + sum of log Gaussian densities.
/// Exact ties break toward LoS, the null condition.
NbPrediction nb_predict(const NbModel& model, const FeatureVec& x);

/// Per-class joint log-likelihood log P(y) + sum_i log P(x_i|y).
Eigen::Vector2d nb_joint_log_likelihood(const NbModel& model,
                                        const FeatureVec& x);

// --- SVM -----------------------------------------------------------------

struct KernelSpec {
  enum class Type { Rbf, Linear };
  Type type = Type::Rbf;
  // gamma <= 0 requests the scale heuristic 1 / (3 * mean feature
  // variance), resolved at train time; models always store the resolved
  // value.
  double gamma = 0.0;

  bool operator==(const KernelSpec&) const = default;
};

double kernel_eval(const KernelSpec& kernel, const FeatureVec& a,
                   const FeatureVec& b);

struct SvmTrainOptions {
  double c = 1.0;
  KernelSpec kernel{};
  double tol = 1e-3;
  // Scales the optimizer's iteration budget. Pair selection here is the
  // deterministic maximal-violating-pair rule, so `seed` does not change
  // the result; it is accepted so callers can treat both learners alike.
  int max_passes = 10;
  std::uint64_t seed = 0;
};

struct SvmDiagnostics {
  bool converged = true;
  std::size_t iterations = 0;
  double max_kkt_violation = 0.0;
  double alpha_label_sum = 0.0;
};

struct SvmModel {
  FeatureMatrix support_vectors;   // the "landmarks"
  Eigen::VectorXd alpha;           // in (0, C] per support vector
  Eigen::VectorXd label;           // +1 (NLoS) or -1 (LoS)
  double bias = 0.0;
  KernelSpec kernel{};
  double c = 1.0;
  SvmDiagnostics diagnostics{};
};

/// SMO on the soft-margin dual. At convergence every training point
/// satisfies the KKT conditions within tol and sum(alpha_i * y_i) stays
/// within 1e-8 of zero. Non-convergence is soft: the best iterate is
/// returned with diagnostics.converged = false. Throws SingleClass.
SvmModel svm_train(const std::vector<features::FeatureSample>& samples,
                   const SvmTrainOptions& options = {});

struct SvmPrediction {
  Condition label = Condition::LoS;
  double margin = 0.0;
};

/// margin f(x) = sum_i alpha_i y_i K(sv_i, x) + bias; NLoS iff f(x) > 0,
/// with f(x) = 0 breaking toward LoS. Throws EmptyModel.
SvmPrediction svm_predict(const SvmModel& model, const FeatureVec& x);

/// Margins for many points at once (one kernel pass over the SVs).
Eigen::VectorXd svm_decision_function(const SvmModel& model,
                                      const FeatureMatrix& x);

// --- serialization -------------------------------------------------------

// JSON carries a "model_type" tag ("nb" | "svm"); round-tripping either
// model reproduces bit-identical predictions.
nlohmann::json to_json(const NbModel& model);
nlohmann::json to_json(const SvmModel& model);
NbModel nb_from_json(const nlohmann::json& j);
SvmModel svm_from_json(const nlohmann::json& j);

}  // namespace nlosbench::learn
