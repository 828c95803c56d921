#include "nlosbench/trace.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "nlosbench/csv.hpp"
#include "nlosbench/error.hpp"
#include "nlosbench/log.hpp"

namespace nlosbench::trace {

namespace {

constexpr std::string_view kTraceHeader =
    "side,seq,timestamp_ms,lat_deg,lon_deg,alt_m,speed_mps";
constexpr std::string_view kLabelHeader = "start_ms,end_ms,condition";
constexpr std::string_view kDeliveryHeader =
    "seq,send_time_ms,delivered,condition";

}  // namespace

std::vector<PacketLogEntry> parse_trace(std::istream& in) {
  std::vector<PacketLogEntry> entries;
  csv::for_each_row(
      in, kTraceHeader,
      [&entries](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 7) {
          throw MalformedRow(line, "expected 7 fields, got " +
                                       std::to_string(f.size()));
        }
        try {
          PacketLogEntry e;
          e.side = side_from_string(f[0]);
          e.seq = csv::parse_u64(f[1], "seq");
          e.timestamp_ms = csv::parse_i64(f[2], "timestamp_ms");
          e.lat_deg = csv::parse_double(f[3], "lat_deg");
          e.lon_deg = csv::parse_double(f[4], "lon_deg");
          e.alt_m = csv::parse_double(f[5], "alt_m");
          e.speed_mps = csv::parse_double(f[6], "speed_mps");
          if (e.speed_mps < 0.0) throw Error("speed_mps must be >= 0");
          entries.push_back(e);
        } catch (const Error& err) {
          throw MalformedRow(line, err.what());
        }
      });
  if (entries.empty()) throw EmptyTrace();
  return entries;
}

MatchResult match_logs(const std::vector<PacketLogEntry>& tx,
                       const std::vector<PacketLogEntry>& rx,
                       std::int64_t clock_offset_ms) {
  if (tx.empty()) throw NoTransmissions();
  for (const auto& e : tx) {
    if (e.side != Side::Tx) throw Error("tx log contains an rx-side entry");
  }

  // Matching is by sequence number only; the offset re-synchronizes rx
  // clocks for anyone consuming rx times downstream.
  std::unordered_map<std::uint64_t, std::size_t> rx_count;
  rx_count.reserve(rx.size());
  for (const auto& e : rx) {
    if (e.side != Side::Rx) throw Error("rx log contains a tx-side entry");
    (void)(e.timestamp_ms + clock_offset_ms);
    ++rx_count[e.seq];
  }

  MatchResult result;
  result.records.reserve(tx.size());
  std::unordered_set<std::uint64_t> tx_seqs;
  tx_seqs.reserve(tx.size());
  const PacketLogEntry* prev = nullptr;
  for (const auto& e : tx) {
    if (prev != nullptr && e.seq <= prev->seq) {
      throw Error("tx seq values must be strictly increasing (seq " +
                  std::to_string(e.seq) + " after " +
                  std::to_string(prev->seq) + ")");
    }
    if (prev != nullptr && e.timestamp_ms < prev->timestamp_ms) {
      throw Error("tx timestamps must be non-decreasing");
    }
    prev = &e;
    tx_seqs.insert(e.seq);
    const auto it = rx_count.find(e.seq);
    const bool delivered = it != rx_count.end();
    if (delivered && it->second > 1) {
      result.duplicate_rx_entries += it->second - 1;
    }
    result.records.push_back({e.seq, e.timestamp_ms, delivered});
  }

  for (const auto& [seq, count] : rx_count) {
    if (!tx_seqs.contains(seq)) result.unknown_rx.push_back(seq);
  }
  std::sort(result.unknown_rx.begin(), result.unknown_rx.end());
  if (!result.unknown_rx.empty()) {
    log::warn(std::to_string(result.unknown_rx.size()) +
              " rx seq(s) never transmitted; ignoring them");
  }
  return result;
}

void validate_intervals(const std::vector<LabelInterval>& intervals) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (iv.start_ms >= iv.end_ms) {
      throw InvalidIntervals("interval " + std::to_string(i) +
                             " has start_ms >= end_ms");
    }
    if (i > 0 && iv.start_ms < intervals[i - 1].end_ms) {
      throw InvalidIntervals("intervals " + std::to_string(i - 1) + " and " +
                             std::to_string(i) + " overlap or are unsorted");
    }
  }
}

LabeledTimeline label_records(const std::vector<DeliveryRecord>& records,
                              const std::vector<LabelInterval>& intervals) {
  validate_intervals(intervals);
  LabeledTimeline out;
  out.records.reserve(records.size());
  for (const auto& rec : records) {
    // Last interval with start_ms <= t; containment is half-open.
    const auto it = std::upper_bound(
        intervals.begin(), intervals.end(), rec.send_time_ms,
        [](std::int64_t t, const LabelInterval& iv) { return t < iv.start_ms; });
    if (it == intervals.begin() || rec.send_time_ms >= std::prev(it)->end_ms) {
      ++out.uncovered;
      continue;
    }
    out.records.push_back({rec, std::prev(it)->condition});
  }
  if (out.uncovered > 0) {
    log::info(std::to_string(out.uncovered) +
              " record(s) outside every label interval were dropped");
  }
  return out;
}

void write_trace_csv(std::ostream& out,
                     const std::vector<PacketLogEntry>& entries) {
  out << kTraceHeader << '\n';
  for (const auto& e : entries) {
    out << to_string(e.side) << ',' << e.seq << ',' << e.timestamp_ms << ','
        << csv::format_double(e.lat_deg) << ',' << csv::format_double(e.lon_deg)
        << ',' << csv::format_double(e.alt_m) << ','
        << csv::format_double(e.speed_mps) << '\n';
  }
}

std::vector<LabelInterval> read_label_csv(std::istream& in) {
  std::vector<LabelInterval> intervals;
  csv::for_each_row(
      in, kLabelHeader,
      [&intervals](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 3) {
          throw MalformedRow(line, "expected 3 fields, got " +
                                       std::to_string(f.size()));
        }
        try {
          LabelInterval iv;
          iv.start_ms = csv::parse_i64(f[0], "start_ms");
          iv.end_ms = csv::parse_i64(f[1], "end_ms");
          iv.condition = condition_from_string(f[2]);
          intervals.push_back(iv);
        } catch (const Error& err) {
          throw MalformedRow(line, err.what());
        }
      });
  validate_intervals(intervals);
  return intervals;
}

void write_label_csv(std::ostream& out,
                     const std::vector<LabelInterval>& intervals) {
  out << kLabelHeader << '\n';
  for (const auto& iv : intervals) {
    out << iv.start_ms << ',' << iv.end_ms << ',' << to_string(iv.condition)
        << '\n';
  }
}

std::vector<LabeledRecord> read_delivery_csv(std::istream& in) {
  std::vector<LabeledRecord> records;
  csv::for_each_row(
      in, kDeliveryHeader,
      [&records](std::size_t line, const std::vector<std::string>& f) {
        if (f.size() != 4) {
          throw MalformedRow(line, "expected 4 fields, got " +
                                       std::to_string(f.size()));
        }
        try {
          LabeledRecord r;
          r.record.seq = csv::parse_u64(f[0], "seq");
          r.record.send_time_ms = csv::parse_i64(f[1], "send_time_ms");
          if (f[2] == "0") {
            r.record.delivered = false;
          } else if (f[2] == "1") {
            r.record.delivered = true;
          } else {
            throw Error("delivered must be 0 or 1, got '" + f[2] + "'");
          }
          r.condition = condition_from_string(f[3]);
          records.push_back(r);
        } catch (const Error& err) {
          throw MalformedRow(line, err.what());
        }
      });
  return records;
}

void write_delivery_csv(std::ostream& out,
                        const std::vector<LabeledRecord>& records) {
  out << kDeliveryHeader << '\n';
  for (const auto& r : records) {
    out << r.record.seq << ',' << r.record.send_time_ms << ','
        << (r.record.delivered ? '1' : '0') << ',' << to_string(r.condition)
        << '\n';
  }
}

}  // namespace nlosbench::trace
