#include "nlosbench/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlosbench/csv.hpp"
#include "nlosbench/error.hpp"
#include "nlosbench/log.hpp"
#include "nlosbench/rng.hpp"

namespace nlosbench::eval {

using nlohmann::json;

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::Nb ? "nb" : "svm";
}

ModelKind model_kind_from_string(std::string_view text) {
  if (text == "nb") return ModelKind::Nb;
  if (text == "svm") return ModelKind::Svm;
  throw Error("unknown model kind '" + std::string(text) +
              "' (expected nb or svm)");
}

MetricsReport compute_metrics(const std::vector<Condition>& truth,
                              const std::vector<Condition>& predicted) {
  if (truth.size() != predicted.size()) {
    throw LengthMismatch("truth has " + std::to_string(truth.size()) +
                         " labels, predictions have " +
                         std::to_string(predicted.size()));
  }
  if (truth.empty()) throw EmptyInput();

  MetricsReport report;
  auto& m = report.matrix;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual_nlos = truth[i] == Condition::NLoS;
    const bool predicted_nlos = predicted[i] == Condition::NLoS;
    if (actual_nlos && predicted_nlos) ++m.tp;
    else if (!actual_nlos && !predicted_nlos) ++m.tn;
    else if (!actual_nlos && predicted_nlos) ++m.fp;
    else ++m.fn;
  }
  const auto ratio = [](std::uint64_t num,
                        std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  report.accuracy = ratio(m.tp + m.tn, m.total());
  report.precision = ratio(m.tp, m.tp + m.fp);
  report.recall = ratio(m.tp, m.tp + m.fn);
  report.fpr = ratio(m.fp, m.fp + m.tn);
  return report;
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n_samples,
                                                  std::size_t k,
                                                  std::uint64_t seed,
                                                  bool shuffle) {
  if (k == 0) throw EmptyInput();
  if (k > n_samples) {
    throw KTooLarge("k=" + std::to_string(k) + " exceeds n=" +
                    std::to_string(n_samples));
  }
  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    std::mt19937_64 gen(seed);
    rng::shuffle(order, gen);
  }
  const std::size_t base = n_samples / k;
  const std::size_t extra = n_samples % k;
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                    order.begin() + static_cast<std::ptrdiff_t>(cursor + size));
    cursor += size;
  }
  return folds;
}

namespace {

Aggregate aggregate(const std::vector<std::optional<double>>& values) {
  std::vector<double> defined;
  defined.reserve(values.size());
  for (const auto& v : values) {
    if (v.has_value()) defined.push_back(*v);
  }
  Aggregate out;
  out.count = defined.size();
  if (defined.empty()) return out;
  const double mean =
      std::accumulate(defined.begin(), defined.end(), 0.0) /
      static_cast<double>(defined.size());
  out.mean = mean;
  if (defined.size() >= 2) {
    double ss = 0.0;
    for (const double v : defined) ss += (v - mean) * (v - mean);
    out.stddev = std::sqrt(ss / static_cast<double>(defined.size() - 1));
  }
  return out;
}

bool has_both_classes(const std::vector<features::FeatureSample>& samples) {
  bool los = false, nlos = false;
  for (const auto& s : samples) {
    (s.label == Condition::LoS ? los : nlos) = true;
    if (los && nlos) return true;
  }
  return false;
}

// Train on `training`, predict `eval_x`, per the requested kind.
std::vector<Condition> train_predict(
    const std::vector<features::FeatureSample>& training,
    const learn::FeatureMatrix& eval_x, ModelKind kind,
    const EvalOptions& options, std::uint64_t smo_seed) {
  std::vector<Condition> predicted(
      static_cast<std::size_t>(eval_x.rows()));
  if (kind == ModelKind::Nb) {
    const learn::NbModel model =
        learn::nb_train(training, options.var_smoothing);
    for (Eigen::Index i = 0; i < eval_x.rows(); ++i) {
      predicted[static_cast<std::size_t>(i)] =
          learn::nb_predict(model, eval_x.row(i).transpose()).label;
    }
    return predicted;
  }
  learn::SvmTrainOptions svm = options.svm;
  svm.seed = smo_seed;
  const learn::SvmModel model = learn::svm_train(training, svm);
  const Eigen::VectorXd margins = learn::svm_decision_function(model, eval_x);
  for (Eigen::Index i = 0; i < eval_x.rows(); ++i) {
    predicted[static_cast<std::size_t>(i)] =
        margins[i] > 0.0 ? Condition::NLoS : Condition::LoS;
  }
  return predicted;
}

std::string index_set_id(const std::vector<std::size_t>& indices) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::size_t v : indices) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace

CvReport cross_validate(const std::vector<features::FeatureSample>& samples,
                        ModelKind kind, const EvalOptions& options) {
  CvReport report;
  report.model = kind;
  report.scenario = options.scenario_tag;
  report.shuffled = options.shuffle;
  report.requested_folds = options.folds;

  const auto folds =
      kfold_split(samples.size(), options.folds, options.seed, options.shuffle);

  std::vector<std::optional<double>> acc, prec, rec, fpr;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<char> held_out(samples.size(), 0);
    for (const std::size_t idx : folds[f]) held_out[idx] = 1;

    std::vector<features::FeatureSample> training;
    training.reserve(samples.size() - folds[f].size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!held_out[i]) training.push_back(samples[i]);
    }
    if (!has_both_classes(training)) {
      log::warn("fold " + std::to_string(f) +
                ": training union is single-class, skipping");
      report.skipped_folds.push_back(f);
      continue;
    }

    learn::FeatureMatrix eval_x(static_cast<Eigen::Index>(folds[f].size()),
                                learn::kNumFeatures);
    std::vector<Condition> truth(folds[f].size());
    for (std::size_t i = 0; i < folds[f].size(); ++i) {
      const auto& s = samples[folds[f][i]];
      eval_x.row(static_cast<Eigen::Index>(i)) =
          learn::feature_vector(s).transpose();
      truth[i] = s.label;
    }

    try {
      const auto predicted = train_predict(
          training, eval_x, kind, options,
          rng::stream_seed(options.seed, "smo:fold:" + std::to_string(f)));
      const MetricsReport fold_report = compute_metrics(truth, predicted);
      acc.push_back(fold_report.accuracy);
      prec.push_back(fold_report.precision);
      rec.push_back(fold_report.recall);
      fpr.push_back(fold_report.fpr);
      report.folds.push_back(fold_report);
    } catch (const Error& err) {
      throw Error("fold " + std::to_string(f) + ": " + err.what());
    }
  }

  report.accuracy = aggregate(acc);
  report.precision = aggregate(prec);
  report.recall = aggregate(rec);
  report.fpr = aggregate(fpr);
  return report;
}

RobustnessSplit robustness_split(std::size_t n_samples, std::uint64_t seed,
                                 bool shuffle) {
  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    std::mt19937_64 gen(seed);
    rng::shuffle(order, gen);
  }
  RobustnessSplit split;
  const std::size_t n_val = n_samples / 10 + (n_samples % 10 > 0 ? 1 : 0);
  split.validation.assign(order.begin(),
                          order.begin() + static_cast<std::ptrdiff_t>(n_val));
  const std::size_t pool = n_samples - n_val;
  const std::size_t base = pool / 10;
  const std::size_t extra = pool % 10;
  std::size_t cursor = n_val;
  split.subsets.resize(10);
  for (std::size_t j = 0; j < 10; ++j) {
    const std::size_t size = base + (j < extra ? 1 : 0);
    split.subsets[j].assign(
        order.begin() + static_cast<std::ptrdiff_t>(cursor),
        order.begin() + static_cast<std::ptrdiff_t>(cursor + size));
    cursor += size;
  }
  return split;
}

RobustnessCurve robustness_experiment(
    const std::vector<features::FeatureSample>& samples, ModelKind kind,
    const EvalOptions& options) {
  if (samples.size() < 20) {
    throw TooFewSamples("robustness experiment needs >= 20 samples");
  }
  if (!has_both_classes(samples)) throw SingleClass();

  const RobustnessSplit split =
      robustness_split(samples.size(), options.seed, options.shuffle);

  RobustnessCurve curve;
  curve.model = kind;
  curve.scenario = options.scenario_tag;
  curve.shuffled = options.shuffle;
  curve.validation_id = index_set_id(split.validation);
  curve.validation_size = split.validation.size();

  learn::FeatureMatrix eval_x(
      static_cast<Eigen::Index>(split.validation.size()),
      learn::kNumFeatures);
  std::vector<Condition> truth(split.validation.size());
  for (std::size_t i = 0; i < split.validation.size(); ++i) {
    const auto& s = samples[split.validation[i]];
    eval_x.row(static_cast<Eigen::Index>(i)) =
        learn::feature_vector(s).transpose();
    truth[i] = s.label;
  }

  std::vector<features::FeatureSample> training;
  for (std::size_t j = 0; j < split.subsets.size(); ++j) {
    for (const std::size_t idx : split.subsets[j]) {
      training.push_back(samples[idx]);
    }
    if (!has_both_classes(training)) {
      log::warn("robustness step " + std::to_string(j + 1) +
                ": training slice is single-class, skipping");
      continue;
    }
    try {
      const auto predicted = train_predict(
          training, eval_x, kind, options,
          rng::stream_seed(options.seed, "smo:step:" + std::to_string(j)));
      const MetricsReport metrics = compute_metrics(truth, predicted);
      curve.points.push_back(
          {0.09 * static_cast<double>(j + 1), *metrics.accuracy});
    } catch (const Error& err) {
      throw Error("robustness step " + std::to_string(j + 1) + ": " +
                  err.what());
    }
  }
  return curve;
}

// --- serialization ---------------------------------------------------------

namespace {

json optional_to_json(const std::optional<double>& v) {
  if (!v.has_value()) return nullptr;
  return *v;
}

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json aggregate_to_json(const Aggregate& a) {
  return {{"mean", optional_to_json(a.mean)},
          {"stddev", optional_to_json(a.stddev)},
          {"count", a.count}};
}

Aggregate aggregate_from_json(const json& j) {
  Aggregate a;
  a.mean = optional_from_json(j.at("mean"));
  a.stddev = optional_from_json(j.at("stddev"));
  a.count = j.at("count").get<std::size_t>();
  return a;
}

MetricsReport metrics_from_json(const json& j) {
  MetricsReport r;
  const auto& m = j.at("matrix");
  r.matrix.tp = m.at("tp").get<std::uint64_t>();
  r.matrix.tn = m.at("tn").get<std::uint64_t>();
  r.matrix.fp = m.at("fp").get<std::uint64_t>();
  r.matrix.fn = m.at("fn").get<std::uint64_t>();
  r.accuracy = optional_from_json(j.at("accuracy"));
  r.precision = optional_from_json(j.at("precision"));
  r.recall = optional_from_json(j.at("recall"));
  r.fpr = optional_from_json(j.at("fpr"));
  return r;
}

std::string format_metric(const std::optional<double>& v) {
  if (!v.has_value()) return "n/a";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << *v;
  return out.str();
}

}  // namespace

json to_json(const MetricsReport& report) {
  return {{"matrix",
           {{"tp", report.matrix.tp},
            {"tn", report.matrix.tn},
            {"fp", report.matrix.fp},
            {"fn", report.matrix.fn}}},
          {"accuracy", optional_to_json(report.accuracy)},
          {"precision", optional_to_json(report.precision)},
          {"recall", optional_to_json(report.recall)},
          {"fpr", optional_to_json(report.fpr)}};
}

json to_json(const CvReport& report) {
  json folds = json::array();
  for (const auto& f : report.folds) folds.push_back(to_json(f));
  return {{"model", std::string(to_string(report.model))},
          {"scenario", report.scenario},
          {"shuffled", report.shuffled},
          {"requested_folds", report.requested_folds},
          {"folds", std::move(folds)},
          {"skipped_folds", report.skipped_folds},
          {"aggregates",
           {{"accuracy", aggregate_to_json(report.accuracy)},
            {"precision", aggregate_to_json(report.precision)},
            {"recall", aggregate_to_json(report.recall)},
            {"fpr", aggregate_to_json(report.fpr)}}}};
}

json to_json(const RobustnessCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points) {
    points.push_back({{"training_fraction", p.training_fraction},
                      {"accuracy", p.accuracy}});
  }
  return {{"model", std::string(to_string(curve.model))},
          {"scenario", curve.scenario},
          {"shuffled", curve.shuffled},
          {"validation_id", curve.validation_id},
          {"validation_size", curve.validation_size},
          {"points", std::move(points)}};
}

CvReport cv_report_from_json(const json& j) {
  CvReport report;
  report.model = model_kind_from_string(j.at("model").get<std::string>());
  report.scenario = j.at("scenario").get<std::string>();
  report.shuffled = j.at("shuffled").get<bool>();
  report.requested_folds = j.at("requested_folds").get<std::size_t>();
  for (const auto& f : j.at("folds")) {
    report.folds.push_back(metrics_from_json(f));
  }
  report.skipped_folds =
      j.at("skipped_folds").get<std::vector<std::size_t>>();
  const auto& agg = j.at("aggregates");
  report.accuracy = aggregate_from_json(agg.at("accuracy"));
  report.precision = aggregate_from_json(agg.at("precision"));
  report.recall = aggregate_from_json(agg.at("recall"));
  report.fpr = aggregate_from_json(agg.at("fpr"));
  return report;
}

// --- rendering ---------------------------------------------------------

namespace {

struct ScenarioRow {
  std::string scenario;
  const CvReport* nb = nullptr;
  const CvReport* svm = nullptr;
};

std::vector<ScenarioRow> group_by_scenario(
    const std::vector<CvReport>& reports) {
  std::vector<ScenarioRow> rows;
  for (const auto& r : reports) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const ScenarioRow& row) {
      return row.scenario == r.scenario;
    });
    if (it == rows.end()) {
      rows.push_back({r.scenario, nullptr, nullptr});
      it = std::prev(rows.end());
    }
    (r.model == ModelKind::Nb ? it->nb : it->svm) = &r;
  }
  return rows;
}

}  // namespace

std::string render_table(const std::vector<CvReport>& reports) {
  const auto rows = group_by_scenario(reports);
  std::ostringstream out;
  out << std::left << std::setw(10) << "Scenario";
  for (const char* metric : {"Accuracy", "Precision", "Recall", "FPR"}) {
    out << "  " << std::setw(15) << metric;
  }
  out << '\n' << std::setw(10) << "";
  for (int i = 0; i < 4; ++i) {
    out << "  " << std::setw(7) << "NB" << ' ' << std::setw(7) << "SVM";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << std::setw(10) << row.scenario;
    const auto cell = [&](const CvReport* r,
                          const Aggregate CvReport::*metric) {
      return r == nullptr ? std::string("-")
                          : format_metric((r->*metric).mean);
    };
    for (const auto metric : {&CvReport::accuracy, &CvReport::precision,
                              &CvReport::recall, &CvReport::fpr}) {
      out << "  " << std::setw(7) << cell(row.nb, metric) << ' '
          << std::setw(7) << cell(row.svm, metric);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const std::vector<CvReport>& reports) {
  std::ostringstream out;
  out << "scenario,model,accuracy_mean,accuracy_stddev,precision_mean,"
         "precision_stddev,recall_mean,recall_stddev,fpr_mean,fpr_stddev\n";
  const auto field = [](const std::optional<double>& v) {
    return v.has_value() ? csv::format_double(*v) : std::string("n/a");
  };
  for (const auto& r : reports) {
    out << r.scenario << ',' << to_string(r.model);
    for (const auto metric : {&CvReport::accuracy, &CvReport::precision,
                              &CvReport::recall, &CvReport::fpr}) {
      out << ',' << field((r.*metric).mean) << ',' << field((r.*metric).stddev);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace nlosbench::eval
