#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nlosbench/types.hpp"

// Trace data model: dual-sided packet logs, seq-based matching into a
// per-slot delivery timeline, and interval labeling. All functions are
// pure; inputs are never mutated.
namespace nlosbench::trace {

/// Parses the trace CSV format
/// (`side,seq,timestamp_ms,lat_deg,lon_deg,alt_m,speed_mps`).
/// Throws MalformedRow on wrong arity or an unparseable field and
/// EmptyTrace when the stream holds a header but no data rows.
std::vector<PacketLogEntry> parse_trace(std::istream& in);

struct MatchResult {
  std::vector<DeliveryRecord> records;      // one per tx seq, in tx order
  std::vector<std::uint64_t> unknown_rx;    // rx seqs never transmitted
  std::size_t duplicate_rx_entries = 0;     // extra rx rows beyond the first
};

/// Marks each transmitted seq delivered iff it shows up on the rx side,
/// duplicates collapsing to one. rx timestamps get clock_offset_ms added
/// before any time use; matching itself is by sequence number only, so
/// out-of-order rx logs are fine. Throws NoTransmissions on empty tx.
MatchResult match_logs(const std::vector<PacketLogEntry>& tx,
                       const std::vector<PacketLogEntry>& rx,
                       std::int64_t clock_offset_ms = 0);

struct LabeledTimeline {
  std::vector<LabeledRecord> records;  // only records covered by an interval
  std::size_t uncovered = 0;           // coverage report
};

/// Throws InvalidIntervals when the list violates the LabelInterval
/// invariants (sorted, non-overlapping, start < end).
void validate_intervals(const std::vector<LabelInterval>& intervals);

/// Assigns each record the condition of the half-open interval
/// [start_ms, end_ms) containing its send time. Records outside every
/// interval are dropped and counted, never an error.
LabeledTimeline label_records(const std::vector<DeliveryRecord>& records,
                              const std::vector<LabelInterval>& intervals);

// CSV formats (see README for the exact headers).
void write_trace_csv(std::ostream& out,
                     const std::vector<PacketLogEntry>& entries);

std::vector<LabelInterval> read_label_csv(std::istream& in);
void write_label_csv(std::ostream& out,
                     const std::vector<LabelInterval>& intervals);

std::vector<LabeledRecord> read_delivery_csv(std::istream& in);
void write_delivery_csv(std::ostream& out,
                        const std::vector<LabeledRecord>& records);

}  // namespace nlosbench::trace
