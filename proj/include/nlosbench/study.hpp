#pragma once

#include <cstdint>
#include <vector>

#include "nlosbench/eval.hpp"
#include "nlosbench/features.hpp"
#include "nlosbench/simgen.hpp"

// End-to-end reproduction studies over the calibrated scenario presets.
// The CLI and the acceptance suite share these, so "crossval --presets"
// and the checked-in expectations run the exact same code path. All
// randomness derives from one root seed via named streams.
namespace nlosbench::study {

inline constexpr simgen::Scenario kAllScenarios[] = {
    simgen::Scenario::Highway, simgen::Scenario::Suburban,
    simgen::Scenario::Urban};

/// generate -> label -> extract for one scenario preset, seeded from
/// stream "simgen:<scenario>" of the root seed.
std::vector<features::FeatureSample> preset_samples(simgen::Scenario scenario,
                                                    std::uint64_t root_seed);

struct StudyOptions {
  std::uint64_t root_seed = 42;
  std::size_t folds = 10;
  bool shuffle = true;
  double var_smoothing = 1e-9;
  learn::SvmTrainOptions svm{};
};

/// 10-fold cross-validation of both detectors on all three presets; the
/// table-shaped report over the result mirrors the published layout.
std::vector<eval::CvReport> table_study(const StudyOptions& options);

/// Robustness curves for one scenario preset (both model kinds on the
/// same split when both are requested).
std::vector<eval::RobustnessCurve> robustness_study(
    simgen::Scenario scenario, const std::vector<eval::ModelKind>& kinds,
    const StudyOptions& options);

}  // namespace nlosbench::study
