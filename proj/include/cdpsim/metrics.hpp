#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cdpsim/config.hpp"
#include "cdpsim/simulation.hpp"
#include "cdpsim/workload.hpp"

namespace cdpsim {

struct RunMetrics {
  double recall = 0.0;
  double success_rate = 0.0;
  double avg_discovery_delay = 0.0;  // valid only when queries_resolved > 0
  std::uint64_t queries_issued = 0;
  std::uint64_t queries_resolved = 0;
  std::uint64_t hits_lost = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t overflow_drops = 0;

  nlohmann::json to_json() const;
};

// Pooled relevant-retrieved over relevant counts across issued queries.
double recall(const std::vector<QueryOutcome>& outcomes, const Workload& workload);

// Fraction of issued queries with at least one retrieved document.
double success_rate(const std::vector<QueryOutcome>& outcomes);

// Mean first-hit delay over resolved queries.
// Throws NoResolvedQueriesError when nothing resolved.
double avg_discovery_delay(const std::vector<QueryOutcome>& outcomes);

RunMetrics compute_metrics(const Simulation& sim);

// Generates the workload from (config, seed), plays it, returns the metrics.
// Deterministic in the full config (the seed included).
RunMetrics run_scenario(const SimConfig& cfg);
RunMetrics run_scenario(const SimConfig& cfg, const Workload& workload);

enum class SweepAxis { Peers, Speed };

SweepAxis sweep_axis_from_string(const std::string& s);  // throws BadConfigError
std::string to_string(SweepAxis axis);
std::vector<double> default_axis_values(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Peers;
  std::vector<double> values;  // empty = default_axis_values(axis)
  std::vector<Protocol> protocols = {Protocol::CDP, Protocol::GossipingLB};
  int seeds = 10;  // seeds base_cfg.seed .. base_cfg.seed + seeds - 1
  int jobs = 1;
};

struct SweepCell {
  double axis_value = 0.0;
  Protocol protocol = Protocol::CDP;
  std::vector<RunMetrics> runs;  // one per seed, seed order

  double mean_of(const std::string& metric) const;
  double std_of(const std::string& metric) const;
};

// Full grid of (axis value, protocol, seed) runs. Cells ordered by
// (axis value, protocol); deterministic regardless of jobs.
std::vector<SweepCell> sweep(const SimConfig& base_cfg, const SweepSpec& spec);

// rows: axis,axis_value,protocol,seed_count,metric,mean,std
std::string sweep_to_csv(const std::vector<SweepCell>& cells, SweepAxis axis);

nlohmann::json sweep_runs_to_json(const std::vector<SweepCell>& cells,
                                  SweepAxis axis, std::uint64_t base_seed);

// Metric names understood by SweepCell::mean_of and the CSV writer.
const std::vector<std::string>& metric_names();

}  // namespace cdpsim
