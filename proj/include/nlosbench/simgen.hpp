#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "nlosbench/types.hpp"

#include <nlohmann/json_fwd.hpp>

// Synthetic labeled delivery traces from a two-state semi-Markov LoS/NLoS
// channel. Episode durations are Pareto (heavy-tailed, so conditions have
// memory); within an episode each slot delivers as an independent
// Bernoulli with the state's probability.
namespace nlosbench::simgen {

enum class Scenario { Highway, Suburban, Urban };

std::string_view to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view text);

struct ScenarioConfig {
  Scenario scenario = Scenario::Highway;
  double p_deliver_los = 0.0;
  double p_deliver_nlos = 0.0;
  double pareto_scale_los_s = 0.0;   // seconds
  double pareto_alpha_los = 0.0;
  double pareto_scale_nlos_s = 0.0;  // seconds
  double pareto_alpha_nlos = 0.0;
  std::int64_t packet_period_ms = 100;
  double duration_s = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the violated invariant.
void validate(const ScenarioConfig& config);

struct SimOutput {
  std::vector<DeliveryRecord> records;
  std::vector<LabelInterval> intervals;  // tile [0, duration), alternating
  ScenarioConfig config_echo;

  bool operator==(const SimOutput&) const = default;
};

/// Inverse-CDF Pareto draw: scale * (1-u)^(-1/alpha), always >= scale.
/// Throws DomainError unless u in [0,1) and alpha > 1.
double sample_pareto(double scale, double alpha, double u);

/// Deterministic in config including seed: same config, same bits out.
SimOutput generate(const ScenarioConfig& config);

/// Calibrated defaults per scenario. Durations are sized to the published
/// sample counts (highway 16425, suburban 16033, urban 27439 slots at
/// 100 ms); delivery/duration parameters are this toolkit's calibration,
/// not field measurements.
ScenarioConfig preset(Scenario scenario);

nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& j);

}  // namespace nlosbench::simgen
