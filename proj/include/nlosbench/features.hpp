#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nlosbench/types.hpp"

// Sliding-window PDR features over a labeled delivery timeline.
namespace nlosbench::features {

/// <PDR over the last 1 s, 5 s, 10 s> ending at and including the current
/// slot, plus the slot's ground-truth condition.
struct FeatureSample {
  std::int64_t slot_time_ms = 0;
  double pdr_1s = 0.0;
  double pdr_5s = 0.0;
  double pdr_10s = 0.0;
  Condition label = Condition::LoS;

  bool operator==(const FeatureSample&) const = default;
};

/// Window width in slots for a span of `window_ms` at the given period.
std::size_t window_slots(std::int64_t window_ms, std::int64_t period_ms);

/// One sample per slot whose 10 s window is fully populated; the first
/// window_slots(10s)-1 slots are warm-up and emit nothing. Throws
/// NonUniformSpacing when consecutive send times deviate from the period
/// by more than period/2.
std::vector<FeatureSample> extract(const std::vector<LabeledRecord>& records,
                                   std::int64_t period_ms);

// Samples CSV: `slot_time_ms,pdr_1s,pdr_5s,pdr_10s,label`.
std::vector<FeatureSample> read_samples_csv(std::istream& in);
void write_samples_csv(std::ostream& out,
                       const std::vector<FeatureSample>& samples);

}  // namespace nlosbench::features
