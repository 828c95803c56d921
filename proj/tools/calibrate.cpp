// Calibration sweep for the scenario presets: runs the full
// simulate -> featurize -> cross-validate pipeline over a grid of channel
// parameters and prints the resulting accuracies, so preset constants can
// be picked against the target band. Slowish by design; not part of the
// test suite.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "nlosbench/eval.hpp"
#include "nlosbench/features.hpp"
#include "nlosbench/rng.hpp"
#include "nlosbench/simgen.hpp"
#include "nlosbench/trace.hpp"

using namespace nlosbench;

namespace {

struct Cell {
  double p_los, p_nlos, scale_los, scale_nlos;
  double nb_acc, svm_acc;
};

std::vector<features::FeatureSample> pipeline(simgen::ScenarioConfig config,
                                              std::uint64_t seed) {
  config.seed = seed;
  const auto sim = simgen::generate(config);
  const auto labeled = trace::label_records(sim.records, sim.intervals);
  return features::extract(labeled.records, config.packet_period_ms);
}

double cv_accuracy(const std::vector<features::FeatureSample>& samples,
                   eval::ModelKind kind, std::size_t folds) {
  eval::EvalOptions options;
  options.folds = folds;
  options.seed = 7;
  const auto report = eval::cross_validate(samples, kind, options);
  return report.accuracy.mean.value_or(0.0);
}

}  // namespace

int main(int argc, char** argv) {
  simgen::Scenario scenario = simgen::Scenario::Highway;
  bool with_svm = true;
  std::size_t folds = 3;
  std::vector<double> p_los_grid{0.93, 0.95, 0.97};
  std::vector<double> p_nlos_grid{0.25, 0.4, 0.55};
  std::vector<double> scale_los_grid{1.0, 2.0, 3.0};
  std::vector<double> scale_nlos_grid{0.5, 1.0, 2.0};

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scenario" && i + 1 < argc) {
      scenario = simgen::scenario_from_string(argv[++i]);
    } else if (arg == "--nb-only") {
      with_svm = false;
    } else if (arg == "--folds" && i + 1 < argc) {
      folds = static_cast<std::size_t>(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: calibrate [--scenario S] [--nb-only] [--folds K]\n";
      return 2;
    }
  }

  const simgen::ScenarioConfig base = simgen::preset(scenario);
  std::vector<Cell> cells;
  std::cout << "scenario " << simgen::to_string(scenario) << ", "
            << folds << "-fold\n";
  std::cout << "p_los p_nlos scale_los scale_nlos nb_acc svm_acc\n";
  for (const double p_los : p_los_grid) {
    for (const double p_nlos : p_nlos_grid) {
      for (const double s_los : scale_los_grid) {
        for (const double s_nlos : scale_nlos_grid) {
          simgen::ScenarioConfig config = base;
          config.p_deliver_los = p_los;
          config.p_deliver_nlos = p_nlos;
          config.pareto_scale_los_s = s_los;
          config.pareto_scale_nlos_s = s_nlos;
          const auto samples = pipeline(
              config, rng::stream_seed(42, "calibrate"));
          Cell cell{p_los, p_nlos, s_los, s_nlos, 0.0, 0.0};
          cell.nb_acc = cv_accuracy(samples, eval::ModelKind::Nb, folds);
          if (with_svm) {
            cell.svm_acc = cv_accuracy(samples, eval::ModelKind::Svm, folds);
          }
          cells.push_back(cell);
          std::cout << std::fixed << std::setprecision(4) << cell.p_los << ' '
                    << cell.p_nlos << ' ' << cell.scale_los << ' '
                    << cell.scale_nlos << ' ' << cell.nb_acc << ' '
                    << cell.svm_acc << std::endl;
        }
      }
    }
  }
  return 0;
}
