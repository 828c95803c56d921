#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nlosbench {

enum class Side { Tx, Rx };

enum class Condition { LoS, NLoS };

/// One transmitted or received packet record.
struct PacketLogEntry {
  Side side = Side::Tx;
  std::uint64_t seq = 0;
  std::int64_t timestamp_ms = 0;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_m = 0.0;
  double speed_mps = 0.0;

  bool operator==(const PacketLogEntry&) const = default;
};

/// Per-sequence-slot outcome after tx/rx log matching.
struct DeliveryRecord {
  std::uint64_t seq = 0;
  std::int64_t send_time_ms = 0;
  bool delivered = false;

  bool operator==(const DeliveryRecord&) const = default;
};

/// Half-open labeled time span [start_ms, end_ms).
struct LabelInterval {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  Condition condition = Condition::LoS;

  bool operator==(const LabelInterval&) const = default;
};

struct LabeledRecord {
  DeliveryRecord record;
  Condition condition = Condition::LoS;

  bool operator==(const LabeledRecord&) const = default;
};

std::string_view to_string(Side side);
std::string_view to_string(Condition condition);
Side side_from_string(std::string_view text);
Condition condition_from_string(std::string_view text);

}  // namespace nlosbench
