#include "nlosbench/study.hpp"

#include <string>

#include "nlosbench/rng.hpp"
#include "nlosbench/trace.hpp"

namespace nlosbench::study {

std::vector<features::FeatureSample> preset_samples(simgen::Scenario scenario,
                                                    std::uint64_t root_seed) {
  simgen::ScenarioConfig config = simgen::preset(scenario);
  config.seed = rng::stream_seed(
      root_seed, "simgen:" + std::string(simgen::to_string(scenario)));
  const simgen::SimOutput sim = simgen::generate(config);
  const trace::LabeledTimeline labeled =
      trace::label_records(sim.records, sim.intervals);
  return features::extract(labeled.records, config.packet_period_ms);
}

std::vector<eval::CvReport> table_study(const StudyOptions& options) {
  std::vector<eval::CvReport> reports;
  for (const simgen::Scenario scenario : kAllScenarios) {
    const std::string tag(simgen::to_string(scenario));
    const auto samples = preset_samples(scenario, options.root_seed);
    eval::EvalOptions eval_options;
    eval_options.folds = options.folds;
    eval_options.shuffle = options.shuffle;
    // One fold partition per scenario, shared by both detectors.
    eval_options.seed = rng::stream_seed(options.root_seed, "cv:" + tag);
    eval_options.var_smoothing = options.var_smoothing;
    eval_options.svm = options.svm;
    eval_options.scenario_tag = tag;
    reports.push_back(
        eval::cross_validate(samples, eval::ModelKind::Nb, eval_options));
    reports.push_back(
        eval::cross_validate(samples, eval::ModelKind::Svm, eval_options));
  }
  return reports;
}

std::vector<eval::RobustnessCurve> robustness_study(
    simgen::Scenario scenario, const std::vector<eval::ModelKind>& kinds,
    const StudyOptions& options) {
  const std::string tag(simgen::to_string(scenario));
  const auto samples = preset_samples(scenario, options.root_seed);
  eval::EvalOptions eval_options;
  eval_options.folds = options.folds;
  eval_options.shuffle = options.shuffle;
  eval_options.seed = rng::stream_seed(options.root_seed, "robustness:" + tag);
  eval_options.var_smoothing = options.var_smoothing;
  eval_options.svm = options.svm;
  eval_options.scenario_tag = tag;
  std::vector<eval::RobustnessCurve> curves;
  for (const eval::ModelKind kind : kinds) {
    curves.push_back(eval::robustness_experiment(samples, kind, eval_options));
  }
  return curves;
}

}  // namespace nlosbench::study
