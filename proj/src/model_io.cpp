#include <nlohmann/json.hpp>

#include "nlosbench/error.hpp"
#include "nlosbench/learn.hpp"

namespace nlosbench::learn {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& item : j) v[i++] = item.get<double>();
  return v;
}

std::string kernel_type_name(KernelSpec::Type type) {
  return type == KernelSpec::Type::Rbf ? "rbf" : "linear";
}

KernelSpec::Type kernel_type_from_name(const std::string& name) {
  if (name == "rbf") return KernelSpec::Type::Rbf;
  if (name == "linear") return KernelSpec::Type::Linear;
  throw Error("unknown kernel type '" + name + "'");
}

}  // namespace

json to_json(const NbModel& model) {
  json j;
  j["model_type"] = "nb";
  j["classes"] = {"los", "nlos"};
  j["var_smoothing"] = model.var_smoothing;
  j["prior"] = {model.prior[0], model.prior[1]};
  j["mean"] = matrix_to_json(model.mean);
  j["variance"] = matrix_to_json(model.variance);
  return j;
}

NbModel nb_from_json(const json& j) {
  if (j.value("model_type", "") != "nb") {
    throw Error("model_type is not 'nb'");
  }
  NbModel model;
  model.var_smoothing = j.at("var_smoothing").get<double>();
  const auto& prior = j.at("prior");
  if (!prior.is_array() || prior.size() != kNumClasses) {
    throw Error("prior must hold one value per class");
  }
  model.prior << prior[0].get<double>(), prior[1].get<double>();
  for (const char* field : {"mean", "variance"}) {
    const auto& rows = j.at(field);
    if (!rows.is_array() || rows.size() != kNumClasses) {
      throw Error(std::string(field) + " must hold one row per class");
    }
    auto& target = std::string(field) == "mean" ? model.mean : model.variance;
    for (int r = 0; r < kNumClasses; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != kNumFeatures) {
        throw Error(std::string(field) + " rows must hold " +
                    std::to_string(kNumFeatures) + " features");
      }
      for (int c = 0; c < kNumFeatures; ++c) {
        target(r, c) = row[c].get<double>();
      }
    }
  }
  if (std::abs(model.prior.sum() - 1.0) > 1e-12) {
    throw Error("priors must sum to 1");
  }
  if ((model.variance.array() <= 0.0).any()) {
    throw Error("variances must be positive");
  }
  return model;
}

json to_json(const SvmModel& model) {
  json j;
  j["model_type"] = "svm";
  j["kernel"] = {{"type", kernel_type_name(model.kernel.type)},
                 {"gamma", model.kernel.gamma}};
  j["c"] = model.c;
  j["bias"] = model.bias;
  j["support_vectors"] = matrix_to_json(model.support_vectors);
  j["alphas"] = vector_to_json(model.alpha);
  j["labels"] = vector_to_json(model.label);
  j["diagnostics"] = {
      {"converged", model.diagnostics.converged},
      {"iterations", model.diagnostics.iterations},
      {"max_kkt_violation", model.diagnostics.max_kkt_violation},
      {"alpha_label_sum", model.diagnostics.alpha_label_sum}};
  return j;
}

SvmModel svm_from_json(const json& j) {
  if (j.value("model_type", "") != "svm") {
    throw Error("model_type is not 'svm'");
  }
  SvmModel model;
  const auto& kernel = j.at("kernel");
  model.kernel.type = kernel_type_from_name(kernel.at("type").get<std::string>());
  model.kernel.gamma = kernel.at("gamma").get<double>();
  if (model.kernel.type == KernelSpec::Type::Rbf && model.kernel.gamma <= 0.0) {
    throw Error("rbf kernel requires gamma > 0");
  }
  model.c = j.at("c").get<double>();
  model.bias = j.at("bias").get<double>();
  const auto& svs = j.at("support_vectors");
  if (!svs.is_array()) throw Error("support_vectors must be an array");
  model.support_vectors.resize(static_cast<Eigen::Index>(svs.size()),
                               kNumFeatures);
  Eigen::Index r = 0;
  for (const auto& row : svs) {
    if (!row.is_array() || row.size() != kNumFeatures) {
      throw Error("support vectors must hold " +
                  std::to_string(kNumFeatures) + " features");
    }
    for (int c = 0; c < kNumFeatures; ++c) {
      model.support_vectors(r, c) = row[c].get<double>();
    }
    ++r;
  }
  model.alpha = vector_from_json(j.at("alphas"), "alphas");
  model.label = vector_from_json(j.at("labels"), "labels");
  if (model.alpha.size() != model.support_vectors.rows() ||
      model.label.size() != model.support_vectors.rows()) {
    throw Error("alphas, labels and support_vectors disagree in length");
  }
  for (Eigen::Index i = 0; i < model.alpha.size(); ++i) {
    if (!(model.alpha[i] > 0.0 && model.alpha[i] <= model.c)) {
      throw Error("alphas must lie in (0, C]");
    }
    if (model.label[i] != 1.0 && model.label[i] != -1.0) {
      throw Error("labels must be +1 or -1");
    }
  }
  if (j.contains("diagnostics")) {
    const auto& d = j.at("diagnostics");
    model.diagnostics.converged = d.value("converged", true);
    model.diagnostics.iterations = d.value("iterations", std::size_t{0});
    model.diagnostics.max_kkt_violation = d.value("max_kkt_violation", 0.0);
    model.diagnostics.alpha_label_sum = d.value("alpha_label_sum", 0.0);
  }
  return model;
}

}  // namespace nlosbench::learn
