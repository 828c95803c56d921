#include <cmath>
#include <numbers>

#include "nlosbench/error.hpp"
#include "nlosbench/learn.hpp"

namespace nlosbench::learn {

FeatureVec feature_vector(const features::FeatureSample& sample) {
  return {sample.pdr_1s, sample.pdr_5s, sample.pdr_10s};
}

FeatureMatrix feature_matrix(const std::vector<features::FeatureSample>& s) {
  FeatureMatrix x(static_cast<Eigen::Index>(s.size()), kNumFeatures);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x.row(i) = feature_vector(s[static_cast<std::size_t>(i)]).transpose();
  }
  return x;
}

namespace {

int class_index(Condition c) { return c == Condition::LoS ? 0 : 1; }

}  // namespace

NbModel nb_train(const std::vector<features::FeatureSample>& samples,
                 double var_smoothing) {
  if (var_smoothing <= 0.0) throw Error("var_smoothing must be positive");
  const FeatureMatrix x = feature_matrix(samples);
  const Eigen::Index n = x.rows();

  Eigen::Vector2d counts = Eigen::Vector2d::Zero();
  for (const auto& s : samples) counts[class_index(s.label)] += 1.0;
  if (counts.minCoeff() == 0.0) throw SingleClass();
  if (counts.minCoeff() < 2.0) {
    throw TooFewSamples("each class needs at least 2 samples");
  }

  NbModel model;
  model.var_smoothing = var_smoothing;
  model.prior = counts / static_cast<double>(n);

  Eigen::Matrix<double, 2, 3> sum = Eigen::Matrix<double, 2, 3>::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    sum.row(class_index(samples[static_cast<std::size_t>(i)].label)) +=
        x.row(i);
  }
  model.mean = sum.array().colwise() / counts.array();

  Eigen::Matrix<double, 2, 3> sq = Eigen::Matrix<double, 2, 3>::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    const int k = class_index(samples[static_cast<std::size_t>(i)].label);
    const Eigen::RowVector3d d = x.row(i) - model.mean.row(k);
    sq.row(k) += d.cwiseProduct(d);
  }
  model.variance = sq.array().colwise() / counts.array();

  // Relative floor in the largest global feature variance; absolute
  // fallback when the whole matrix is constant.
  const Eigen::RowVector3d global_mean = x.colwise().mean();
  const Eigen::RowVector3d global_var =
      (x.rowwise() - global_mean).array().square().colwise().mean();
  double floor = var_smoothing * global_var.maxCoeff();
  if (floor <= 0.0) floor = var_smoothing;
  model.variance = model.variance.cwiseMax(floor);
  return model;
}

Eigen::Vector2d nb_joint_log_likelihood(const NbModel& model,
                                        const FeatureVec& x) {
  Eigen::Vector2d jll;
  for (int k = 0; k < kNumClasses; ++k) {
    double acc = std::log(model.prior[k]);
    for (int f = 0; f < kNumFeatures; ++f) {
      const double var = model.variance(k, f);
      const double d = x[f] - model.mean(k, f);
      acc += -0.5 * std::log(2.0 * std::numbers::pi * var) -
             d * d / (2.0 * var);
    }
    jll[k] = acc;
  }
  return jll;
}

NbPrediction nb_predict(const NbModel& model, const FeatureVec& x) {
  const Eigen::Vector2d jll = nb_joint_log_likelihood(model, x);
  NbPrediction out;
  out.label = jll[1] > jll[0] ? Condition::NLoS : Condition::LoS;
  const int win = jll[1] > jll[0] ? 1 : 0;
  out.posterior = 1.0 / (1.0 + std::exp(jll[1 - win] - jll[win]));
  return out;
}

}  // namespace nlosbench::learn
