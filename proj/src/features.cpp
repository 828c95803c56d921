#include "nlosbench/features.hpp"

#include <cmath>
#include <ostream>

#include "nlosbench/csv.hpp"
#include "nlosbench/error.hpp"

namespace nlosbench::features {

namespace {

constexpr std::string_view kSamplesHeader =
    "slot_time_ms,pdr_1s,pdr_5s,pdr_10s,label";

constexpr std::int64_t kWindowsMs[3] = {1000, 5000, 10000};

}  // namespace

std::size_t window_slots(std::int64_t window_ms, std::int64_t period_ms) {
  // Slots needed to cover window_ms, never less than one.
  return static_cast<std::size_t>(
      std::max<std::int64_t>(1, (window_ms + period_ms - 1) / period_ms));
}

std::vector<FeatureSample> extract(const std::vector<LabeledRecord>& records,
                                   std::int64_t period_ms) {
  if (period_ms <= 0) throw Error("period_ms must be positive");
  const std::size_t n = records.size();

  for (std::size_t i = 1; i < n; ++i) {
    const std::int64_t delta =
        records[i].record.send_time_ms - records[i - 1].record.send_time_ms;
    if (std::abs(delta - period_ms) * 2 > period_ms) {
      throw NonUniformSpacing(
          i, "expected step of " + std::to_string(period_ms) + " ms, got " +
                 std::to_string(delta) + " ms");
    }
  }

  const std::size_t w1 = window_slots(kWindowsMs[0], period_ms);
  const std::size_t w5 = window_slots(kWindowsMs[1], period_ms);
  const std::size_t w10 = window_slots(kWindowsMs[2], period_ms);

  // Running delivered counts; window sums are prefix differences, so the
  // incremental path is integer-exact.
  std::vector<std::uint64_t> delivered_prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    delivered_prefix[i + 1] =
        delivered_prefix[i] + (records[i].record.delivered ? 1 : 0);
  }
  const auto window_pdr = [&](std::size_t end_inclusive, std::size_t width) {
    const std::uint64_t delivered =
        delivered_prefix[end_inclusive + 1] -
        delivered_prefix[end_inclusive + 1 - width];
    return static_cast<double>(delivered) / static_cast<double>(width);
  };

  std::vector<FeatureSample> samples;
  if (n < w10) return samples;  // all warm-up
  samples.reserve(n - w10 + 1);
  for (std::size_t i = w10 - 1; i < n; ++i) {
    FeatureSample s;
    s.slot_time_ms = records[i].record.send_time_ms;
    s.pdr_1s = window_pdr(i, w1);
    s.pdr_5s = window_pdr(i, w5);
    s.pdr_10s = window_pdr(i, w10);
    s.label = records[i].condition;
    samples.push_back(s);
  }
  return samples;
}

std::vector<FeatureSample> read_samples_csv(std::istream& in) {
  std::vector<FeatureSample> samples;
  csv::for_each_row(
      in, kSamplesHeader,
      [&samples](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 5) {
          throw MalformedRow(line, "expected 5 fields, got " +
                                       std::to_string(f.size()));
        }
        try {
          FeatureSample s;
          s.slot_time_ms = csv::parse_i64(f[0], "slot_time_ms");
          s.pdr_1s = csv::parse_double(f[1], "pdr_1s");
          s.pdr_5s = csv::parse_double(f[2], "pdr_5s");
          s.pdr_10s = csv::parse_double(f[3], "pdr_10s");
          s.label = condition_from_string(f[4]);
          for (const double v : {s.pdr_1s, s.pdr_5s, s.pdr_10s}) {
            if (!(v >= 0.0 && v <= 1.0)) {
              throw Error("PDR values must be in [0,1]");
            }
          }
          samples.push_back(s);
        } catch (const Error& err) {
          throw MalformedRow(line, err.what());
        }
      });
  return samples;
}

void write_samples_csv(std::ostream& out,
                       const std::vector<FeatureSample>& samples) {
  out << kSamplesHeader << '\n';
  for (const auto& s : samples) {
    out << s.slot_time_ms << ',' << csv::format_double(s.pdr_1s) << ','
        << csv::format_double(s.pdr_5s) << ',' << csv::format_double(s.pdr_10s)
        << ',' << to_string(s.label) << '\n';
  }
}

}  // namespace nlosbench::features
