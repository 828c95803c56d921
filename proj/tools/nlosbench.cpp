// nlosbench CLI: simulate | featurize | train | evaluate | crossval |
// robustness | report | replay. Human-readable summaries go to stdout;
// machine-readable artifacts only to files under --out-dir, each run
// leaving exactly one manifest.json that can reproduce it.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlosbench/csv.hpp"
#include "nlosbench/error.hpp"
#include "nlosbench/eval.hpp"
#include "nlosbench/features.hpp"
#include "nlosbench/learn.hpp"
#include "nlosbench/rng.hpp"
#include "nlosbench/simgen.hpp"
#include "nlosbench/study.hpp"
#include "nlosbench/trace.hpp"
#include "nlosbench/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlosbench;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNonConvergence = 4;

int dispatch(const std::vector<std::string>& args);

// --- file helpers -------------------------------------------------------

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

template <typename ReadFn>
auto read_csv_file(const fs::path& path, ReadFn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return fn(in);
}

template <typename WriteFn>
void write_csv_file(const fs::path& path, WriteFn&& fn) {
  std::ostringstream out;
  fn(out);
  write_file_atomic(path, out.str());
}

// --- manifest -------------------------------------------------------------

class ManifestWriter {
 public:
  ManifestWriter(std::string command, const std::vector<std::string>& args,
                 std::uint64_t seed, fs::path out_dir)
      : start_(std::chrono::steady_clock::now()),
        command_(std::move(command)),
        args_(args),
        seed_(seed),
        out_dir_(std::move(out_dir)) {
    fs::create_directories(out_dir_);
  }

  void add_input(const std::string& role, const fs::path& path) {
    inputs_[role] = path.string();
  }
  fs::path output(const std::string& name) {
    outputs_.push_back(name);
    return out_dir_ / name;
  }
  void set_config(json config) { config_ = std::move(config); }

  void finish() const {
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    json manifest{{"tool", "nlosbench"},
                  {"version", NLOSBENCH_VERSION},
                  {"command", command_},
                  {"args", args_},
                  {"seed", seed_},
                  {"inputs", inputs_},
                  {"outputs", outputs_},
                  {"wall_ms", wall.count()}};
    if (!config_.is_null()) manifest["config"] = config_;
    write_json_file(out_dir_ / "manifest.json", manifest);
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::string command_;
  std::vector<std::string> args_;
  std::uint64_t seed_;
  fs::path out_dir_;
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
  json config_ = nullptr;
};

std::vector<eval::ModelKind> kinds_from_flag(const std::string& model) {
  if (model == "nb") return {eval::ModelKind::Nb};
  if (model == "svm") return {eval::ModelKind::Svm};
  return {eval::ModelKind::Nb, eval::ModelKind::Svm};
}

// Robustness curves as plot-ready CSV: one fraction column, one accuracy
// column per model.
std::string robustness_csv(const std::vector<eval::RobustnessCurve>& curves) {
  std::ostringstream out;
  out << "training_fraction";
  for (const auto& c : curves) out << ',' << eval::to_string(c.model) << "_accuracy";
  out << '\n';
  std::size_t steps = 0;
  for (const auto& c : curves) steps = std::max(steps, c.points.size());
  for (std::size_t i = 0; i < steps; ++i) {
    double fraction = 0.0;
    for (const auto& c : curves) {
      if (i < c.points.size()) fraction = c.points[i].training_fraction;
    }
    out << csv::format_double(fraction);
    for (const auto& c : curves) {
      out << ',';
      if (i < c.points.size()) out << csv::format_double(c.points[i].accuracy);
      else out << "n/a";
    }
    out << '\n';
  }
  return out.str();
}

void write_report_artifacts(ManifestWriter& manifest,
                            const std::vector<eval::CvReport>& reports,
                            const std::string& format) {
  if (format == "table") {
    write_file_atomic(manifest.output("report.txt"), eval::render_table(reports));
  } else if (format == "csv") {
    write_file_atomic(manifest.output("report.csv"), eval::render_csv(reports));
  } else {
    json all = json::array();
    for (const auto& r : reports) all.push_back(eval::to_json(r));
    write_json_file(manifest.output("report.json"), all);
  }
}

// --- commands ---------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::uint64_t seed = 42;
  std::string out_dir;
  std::optional<double> p_los, p_nlos;
  std::optional<double> scale_los, alpha_los, scale_nlos, alpha_nlos;
  std::optional<std::int64_t> period_ms;
  std::optional<double> duration_s;
};

int run_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
  simgen::ScenarioConfig config;
  std::string stream_tag = "custom";
  if (!a.scenario.empty()) {
    config = simgen::preset(simgen::scenario_from_string(a.scenario));
    stream_tag = a.scenario;
  } else {
    const bool have_all = a.p_los && a.p_nlos && a.scale_los && a.alpha_los &&
                          a.scale_nlos && a.alpha_nlos && a.duration_s;
    if (!have_all) {
      std::cerr << "simulate: pass --scenario or the full parameter set "
                   "(--p-los --p-nlos --pareto-scale-los --pareto-alpha-los "
                   "--pareto-scale-nlos --pareto-alpha-nlos --duration-s)\n";
      return kExitUsage;
    }
  }
  if (a.p_los) config.p_deliver_los = *a.p_los;
  if (a.p_nlos) config.p_deliver_nlos = *a.p_nlos;
  if (a.scale_los) config.pareto_scale_los_s = *a.scale_los;
  if (a.alpha_los) config.pareto_alpha_los = *a.alpha_los;
  if (a.scale_nlos) config.pareto_scale_nlos_s = *a.scale_nlos;
  if (a.alpha_nlos) config.pareto_alpha_nlos = *a.alpha_nlos;
  if (a.period_ms) config.packet_period_ms = *a.period_ms;
  if (a.duration_s) config.duration_s = *a.duration_s;
  config.seed = rng::stream_seed(a.seed, "simgen:" + stream_tag);
  simgen::validate(config);

  ManifestWriter manifest("simulate", argv, a.seed, a.out_dir);
  const simgen::SimOutput sim = simgen::generate(config);
  const trace::LabeledTimeline labeled =
      trace::label_records(sim.records, sim.intervals);

  write_csv_file(manifest.output("delivery.csv"), [&](std::ostream& out) {
    trace::write_delivery_csv(out, labeled.records);
  });
  write_csv_file(manifest.output("labels.csv"), [&](std::ostream& out) {
    trace::write_label_csv(out, sim.intervals);
  });
  write_json_file(manifest.output("config.json"),
                  simgen::to_json(sim.config_echo));
  manifest.set_config(simgen::to_json(sim.config_echo));
  manifest.finish();

  std::cout << "simulate: " << labeled.records.size() << " delivery records, "
            << sim.intervals.size() << " episodes ("
            << (a.scenario.empty() ? "custom" : a.scenario) << ", seed "
            << a.seed << ") -> " << a.out_dir << "\n";
  return 0;
}

struct FeaturizeArgs {
  std::string delivery, tx, rx, labels;
  std::int64_t clock_offset_ms = 0;
  std::int64_t period_ms = 100;
  std::string out_dir;
};

int run_featurize(const FeaturizeArgs& a, const std::vector<std::string>& argv) {
  const bool from_logs = !a.tx.empty() || !a.rx.empty();
  if (from_logs && (a.tx.empty() || a.rx.empty() || a.labels.empty())) {
    std::cerr << "featurize: the log path needs --tx, --rx and --labels\n";
    return kExitUsage;
  }
  if (!from_logs && a.delivery.empty()) {
    std::cerr << "featurize: pass --delivery or --tx/--rx/--labels\n";
    return kExitUsage;
  }

  ManifestWriter manifest("featurize", argv, 0, a.out_dir);
  std::vector<LabeledRecord> labeled;
  std::size_t uncovered = 0;
  if (from_logs) {
    manifest.add_input("tx", a.tx);
    manifest.add_input("rx", a.rx);
    manifest.add_input("labels", a.labels);
    const auto tx = read_csv_file(a.tx, trace::parse_trace);
    const auto rx = read_csv_file(a.rx, trace::parse_trace);
    const auto intervals = read_csv_file(a.labels, trace::read_label_csv);
    const trace::MatchResult matched =
        trace::match_logs(tx, rx, a.clock_offset_ms);
    const trace::LabeledTimeline timeline =
        trace::label_records(matched.records, intervals);
    labeled = timeline.records;
    uncovered = timeline.uncovered;
    write_csv_file(manifest.output("delivery.csv"), [&](std::ostream& out) {
      trace::write_delivery_csv(out, labeled);
    });
  } else {
    manifest.add_input("delivery", a.delivery);
    labeled = read_csv_file(a.delivery, trace::read_delivery_csv);
    if (!a.labels.empty()) {
      manifest.add_input("labels", a.labels);
      const auto intervals = read_csv_file(a.labels, trace::read_label_csv);
      std::vector<DeliveryRecord> plain;
      plain.reserve(labeled.size());
      for (const auto& r : labeled) plain.push_back(r.record);
      const trace::LabeledTimeline timeline =
          trace::label_records(plain, intervals);
      labeled = timeline.records;
      uncovered = timeline.uncovered;
    }
  }

  const auto samples = features::extract(labeled, a.period_ms);
  write_csv_file(manifest.output("samples.csv"), [&](std::ostream& out) {
    features::write_samples_csv(out, samples);
  });
  manifest.finish();

  std::cout << "featurize: " << samples.size() << " samples from "
            << labeled.size() << " labeled slots (" << uncovered
            << " uncovered) -> " << a.out_dir << "\n";
  return 0;
}

struct TrainArgs {
  std::string samples, model, out_dir;
  std::uint64_t seed = 42;
  double var_smoothing = 1e-9;
  double c = 1.0;
  std::string kernel = "rbf";
  double gamma = 0.0;
  double tol = 1e-3;
  int max_passes = 10;
};

learn::SvmTrainOptions svm_options_from(const TrainArgs& a) {
  learn::SvmTrainOptions svm;
  svm.c = a.c;
  svm.kernel.type = a.kernel == "linear" ? learn::KernelSpec::Type::Linear
                                         : learn::KernelSpec::Type::Rbf;
  svm.kernel.gamma = a.gamma;
  svm.tol = a.tol;
  svm.max_passes = a.max_passes;
  return svm;
}

int run_train(const TrainArgs& a, const std::vector<std::string>& argv) {
  ManifestWriter manifest("train", argv, a.seed, a.out_dir);
  manifest.add_input("samples", a.samples);
  const auto samples = read_csv_file(a.samples, features::read_samples_csv);

  if (a.model == "nb") {
    const learn::NbModel model = learn::nb_train(samples, a.var_smoothing);
    write_json_file(manifest.output("model.json"), learn::to_json(model));
    manifest.finish();
    std::cout << "train: nb model on " << samples.size() << " samples -> "
              << a.out_dir << "\n";
    return 0;
  }

  learn::SvmTrainOptions svm = svm_options_from(a);
  svm.seed = rng::stream_seed(a.seed, "smo");
  const learn::SvmModel model = learn::svm_train(samples, svm);
  write_json_file(manifest.output("model.json"), learn::to_json(model));
  if (!model.diagnostics.converged) {
    write_json_file(manifest.output("diagnostics.json"),
                    learn::to_json(model)["diagnostics"]);
    manifest.finish();
    std::cerr << "train: SMO did not converge (max KKT violation "
              << model.diagnostics.max_kkt_violation
              << "); best iterate written to " << a.out_dir << "\n";
    return kExitNonConvergence;
  }
  manifest.finish();
  std::cout << "train: svm model, " << model.support_vectors.rows()
            << " support vectors on " << samples.size() << " samples -> "
            << a.out_dir << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string model, samples, out_dir;
};

int run_evaluate(const EvaluateArgs& a, const std::vector<std::string>& argv) {
  ManifestWriter manifest("evaluate", argv, 0, a.out_dir);
  manifest.add_input("model", a.model);
  manifest.add_input("samples", a.samples);
  const auto samples = read_csv_file(a.samples, features::read_samples_csv);
  if (samples.empty()) throw EmptyInput();
  const json model_json = read_json_file(a.model);
  const std::string type = model_json.value("model_type", "");

  std::vector<Condition> truth, predicted;
  truth.reserve(samples.size());
  predicted.reserve(samples.size());
  for (const auto& s : samples) truth.push_back(s.label);

  if (type == "nb") {
    const learn::NbModel model = learn::nb_from_json(model_json);
    for (const auto& s : samples) {
      predicted.push_back(
          learn::nb_predict(model, learn::feature_vector(s)).label);
    }
  } else if (type == "svm") {
    const learn::SvmModel model = learn::svm_from_json(model_json);
    const Eigen::VectorXd margins =
        learn::svm_decision_function(model, learn::feature_matrix(samples));
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      predicted.push_back(margins[i] > 0.0 ? Condition::NLoS
                                           : Condition::LoS);
    }
  } else {
    throw Error("model file lacks a known model_type tag");
  }

  const eval::MetricsReport report = eval::compute_metrics(truth, predicted);
  write_json_file(manifest.output("metrics.json"), eval::to_json(report));
  manifest.finish();

  const auto show = [](const std::optional<double>& v) {
    return v.has_value() ? std::to_string(*v) : std::string("n/a");
  };
  std::cout << "evaluate: " << type << " on " << samples.size()
            << " samples: accuracy " << show(report.accuracy) << ", precision "
            << show(report.precision) << ", recall " << show(report.recall)
            << ", fpr " << show(report.fpr) << "\n";
  return 0;
}

struct CrossvalArgs {
  bool presets = false;
  std::string samples, scenario_tag = "samples";
  std::string model = "both";
  std::size_t folds = 10;
  bool no_shuffle = false;
  std::uint64_t seed = 42;
  std::string format = "table";
  std::string out_dir;
  TrainArgs hyper;  // shared hyperparameter flags
};

int run_crossval(const CrossvalArgs& a, const std::vector<std::string>& argv) {
  if (!a.presets && a.samples.empty()) {
    std::cerr << "crossval: pass --presets or --samples\n";
    return kExitUsage;
  }
  ManifestWriter manifest("crossval", argv, a.seed, a.out_dir);
  const auto kinds = kinds_from_flag(a.model);

  std::vector<eval::CvReport> reports;
  const auto run_one = [&](const std::vector<features::FeatureSample>& samples,
                           const std::string& tag) {
    eval::EvalOptions options;
    options.folds = a.folds;
    options.shuffle = !a.no_shuffle;
    options.seed = rng::stream_seed(a.seed, "cv:" + tag);
    options.var_smoothing = a.hyper.var_smoothing;
    options.svm = svm_options_from(a.hyper);
    options.scenario_tag = tag;
    for (const eval::ModelKind kind : kinds) {
      reports.push_back(eval::cross_validate(samples, kind, options));
    }
  };

  if (a.presets) {
    for (const simgen::Scenario scenario : study::kAllScenarios) {
      run_one(study::preset_samples(scenario, a.seed),
              std::string(simgen::to_string(scenario)));
    }
  } else {
    manifest.add_input("samples", a.samples);
    run_one(read_csv_file(a.samples, features::read_samples_csv),
            a.scenario_tag);
  }

  for (const auto& r : reports) {
    write_json_file(
        manifest.output("cv_" + r.scenario + "_" +
                        std::string(eval::to_string(r.model)) + ".json"),
        eval::to_json(r));
  }
  write_report_artifacts(manifest, reports, a.format);
  manifest.finish();
  std::cout << eval::render_table(reports);
  return 0;
}

struct RobustnessArgs {
  std::string scenario, samples, scenario_tag = "samples";
  std::string model = "both";
  bool no_shuffle = false;
  std::uint64_t seed = 42;
  std::string out_dir;
  TrainArgs hyper;
};

int run_robustness(const RobustnessArgs& a,
                   const std::vector<std::string>& argv) {
  if (a.scenario.empty() && a.samples.empty()) {
    std::cerr << "robustness: pass --scenario or --samples\n";
    return kExitUsage;
  }
  ManifestWriter manifest("robustness", argv, a.seed, a.out_dir);
  const auto kinds = kinds_from_flag(a.model);

  std::string tag;
  std::vector<features::FeatureSample> samples;
  if (!a.scenario.empty()) {
    const simgen::Scenario scenario = simgen::scenario_from_string(a.scenario);
    tag = simgen::to_string(scenario);
    samples = study::preset_samples(scenario, a.seed);
  } else {
    manifest.add_input("samples", a.samples);
    tag = a.scenario_tag;
    samples = read_csv_file(a.samples, features::read_samples_csv);
  }

  eval::EvalOptions options;
  options.shuffle = !a.no_shuffle;
  options.seed = rng::stream_seed(a.seed, "robustness:" + tag);
  options.var_smoothing = a.hyper.var_smoothing;
  options.svm = svm_options_from(a.hyper);
  options.scenario_tag = tag;

  std::vector<eval::RobustnessCurve> curves;
  for (const eval::ModelKind kind : kinds) {
    curves.push_back(eval::robustness_experiment(samples, kind, options));
  }

  write_file_atomic(manifest.output("robustness_" + tag + ".csv"),
                    robustness_csv(curves));
  json curves_json = json::array();
  for (const auto& c : curves) curves_json.push_back(eval::to_json(c));
  write_json_file(manifest.output("robustness_" + tag + ".json"), curves_json);
  manifest.finish();

  std::cout << "robustness: " << tag << ", " << curves.size()
            << " curve(s) over " << samples.size() << " samples -> "
            << a.out_dir << "\n";
  for (const auto& c : curves) {
    std::cout << "  " << eval::to_string(c.model) << ":";
    for (const auto& p : c.points) {
      std::cout << ' ' << p.accuracy;
    }
    std::cout << "\n";
  }
  return 0;
}

struct ReportArgs {
  std::vector<std::string> cv_files;
  std::string format = "table";
  std::string out_dir;
};

int run_report(const ReportArgs& a, const std::vector<std::string>& argv) {
  ManifestWriter manifest("report", argv, 0, a.out_dir);
  std::vector<eval::CvReport> reports;
  for (std::size_t i = 0; i < a.cv_files.size(); ++i) {
    manifest.add_input("cv" + std::to_string(i), a.cv_files[i]);
    reports.push_back(eval::cv_report_from_json(read_json_file(a.cv_files[i])));
  }
  write_report_artifacts(manifest, reports, a.format);
  manifest.finish();
  std::cout << eval::render_table(reports);
  return 0;
}

struct ReplayArgs {
  std::string manifest;
  std::string out_dir;
};

int run_replay(const ReplayArgs& a) {
  const json manifest = read_json_file(a.manifest);
  std::vector<std::string> args =
      manifest.at("args").get<std::vector<std::string>>();
  if (!a.out_dir.empty()) {
    bool replaced = false;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--out-dir") {
        args[i + 1] = a.out_dir;
        replaced = true;
      }
    }
    if (!replaced) {
      args.push_back("--out-dir");
      args.push_back(a.out_dir);
    }
  }
  return dispatch(args);
}

// --- argument wiring ----------------------------------------------------

void add_hyper_flags(CLI::App* cmd, TrainArgs& hyper) {
  cmd->add_option("--var-smoothing", hyper.var_smoothing,
                  "NB variance floor, relative to the largest feature variance");
  cmd->add_option("--c", hyper.c, "SVM box constraint");
  cmd->add_option("--kernel", hyper.kernel, "SVM kernel")
      ->check(CLI::IsMember({"rbf", "linear"}));
  cmd->add_option("--gamma", hyper.gamma,
                  "RBF gamma (<= 0 selects the scale heuristic)");
  cmd->add_option("--tol", hyper.tol, "SMO KKT tolerance");
  cmd->add_option("--max-passes", hyper.max_passes,
                  "inert full SMO sweeps before convergence is declared");
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"V2V NLoS detection benchmark"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Generate a labeled synthetic delivery trace");
  sim_cmd->add_option("--scenario", sim.scenario)
      ->check(CLI::IsMember({"highway", "suburban", "urban"}));
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--out-dir", sim.out_dir)->required();
  double p_los = 0, p_nlos = 0, scale_los = 0, alpha_los = 0, scale_nlos = 0,
         alpha_nlos = 0, duration_s = 0;
  std::int64_t period_ms = 0;
  sim_cmd->add_option("--p-los", p_los, "LoS delivery probability");
  sim_cmd->add_option("--p-nlos", p_nlos, "NLoS delivery probability");
  sim_cmd->add_option("--pareto-scale-los", scale_los);
  sim_cmd->add_option("--pareto-alpha-los", alpha_los);
  sim_cmd->add_option("--pareto-scale-nlos", scale_nlos);
  sim_cmd->add_option("--pareto-alpha-nlos", alpha_nlos);
  sim_cmd->add_option("--period-ms", period_ms);
  sim_cmd->add_option("--duration-s", duration_s);

  FeaturizeArgs feat;
  auto* feat_cmd = app.add_subcommand(
      "featurize", "Turn a labeled delivery timeline into PDR samples");
  feat_cmd->add_option("--delivery", feat.delivery);
  feat_cmd->add_option("--tx", feat.tx);
  feat_cmd->add_option("--rx", feat.rx);
  feat_cmd->add_option("--labels", feat.labels);
  feat_cmd->add_option("--clock-offset-ms", feat.clock_offset_ms);
  feat_cmd->add_option("--period-ms", feat.period_ms);
  feat_cmd->add_option("--out-dir", feat.out_dir)->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train one detector");
  train_cmd->add_option("--samples", train.samples)->required();
  train_cmd->add_option("--model", train.model)
      ->required()
      ->check(CLI::IsMember({"nb", "svm"}));
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--out-dir", train.out_dir)->required();
  add_hyper_flags(train_cmd, train);

  EvaluateArgs evaluate;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Score a trained model on samples");
  eval_cmd->add_option("--model", evaluate.model)->required();
  eval_cmd->add_option("--samples", evaluate.samples)->required();
  eval_cmd->add_option("--out-dir", evaluate.out_dir)->required();

  CrossvalArgs crossval;
  auto* cv_cmd = app.add_subcommand(
      "crossval", "k-fold cross-validation (per scenario preset or file)");
  cv_cmd->add_flag("--presets", crossval.presets,
                   "run all three scenario presets");
  cv_cmd->add_option("--samples", crossval.samples);
  cv_cmd->add_option("--scenario-tag", crossval.scenario_tag);
  cv_cmd->add_option("--model", crossval.model)
      ->check(CLI::IsMember({"nb", "svm", "both"}));
  cv_cmd->add_option("--folds", crossval.folds);
  cv_cmd->add_flag("--no-shuffle", crossval.no_shuffle,
                   "temporal blocks instead of a seeded shuffle");
  cv_cmd->add_option("--seed", crossval.seed);
  cv_cmd->add_option("--format", crossval.format)
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cv_cmd->add_option("--out-dir", crossval.out_dir)->required();
  add_hyper_flags(cv_cmd, crossval.hyper);

  RobustnessArgs robustness;
  auto* rob_cmd = app.add_subcommand(
      "robustness", "Accuracy as a function of training size");
  rob_cmd->add_option("--scenario", robustness.scenario)
      ->check(CLI::IsMember({"highway", "suburban", "urban"}));
  rob_cmd->add_option("--samples", robustness.samples);
  rob_cmd->add_option("--scenario-tag", robustness.scenario_tag);
  rob_cmd->add_option("--model", robustness.model)
      ->check(CLI::IsMember({"nb", "svm", "both"}));
  rob_cmd->add_flag("--no-shuffle", robustness.no_shuffle);
  rob_cmd->add_option("--seed", robustness.seed);
  rob_cmd->add_option("--out-dir", robustness.out_dir)->required();
  add_hyper_flags(rob_cmd, robustness.hyper);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand(
      "report", "Render stored cross-validation reports as a table");
  report_cmd->add_option("--cv", report.cv_files)->required();
  report_cmd->add_option("--format", report.format)
      ->check(CLI::IsMember({"table", "csv", "json"}));
  report_cmd->add_option("--out-dir", report.out_dir)->required();

  ReplayArgs replay;
  auto* replay_cmd = app.add_subcommand(
      "replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("--manifest", replay.manifest)->required();
  replay_cmd->add_option("--out-dir", replay.out_dir,
                         "override the recorded output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim_cmd) {
      if (sim_cmd->count("--p-los")) sim.p_los = p_los;
      if (sim_cmd->count("--p-nlos")) sim.p_nlos = p_nlos;
      if (sim_cmd->count("--pareto-scale-los")) sim.scale_los = scale_los;
      if (sim_cmd->count("--pareto-alpha-los")) sim.alpha_los = alpha_los;
      if (sim_cmd->count("--pareto-scale-nlos")) sim.scale_nlos = scale_nlos;
      if (sim_cmd->count("--pareto-alpha-nlos")) sim.alpha_nlos = alpha_nlos;
      if (sim_cmd->count("--period-ms")) sim.period_ms = period_ms;
      if (sim_cmd->count("--duration-s")) sim.duration_s = duration_s;
      return run_simulate(sim, args);
    }
    if (*feat_cmd) return run_featurize(feat, args);
    if (*train_cmd) return run_train(train, args);
    if (*eval_cmd) return run_evaluate(evaluate, args);
    if (*cv_cmd) return run_crossval(crossval, args);
    if (*rob_cmd) return run_robustness(robustness, args);
    if (*report_cmd) return run_report(report, args);
    if (*replay_cmd) return run_replay(replay);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args);
}
