#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdpsim/energy.hpp"
#include "cdpsim/mobility.hpp"
#include "cdpsim/scoring.hpp"
#include "cdpsim/workload.hpp"

namespace cdpsim {

enum class AffinityMode { Oracle, Estimate };

struct NetParams {
  int queue_capacity = 50;          // waiting slots per peer
  double base_service_rate = 25.0;  // messages/s at cpu factor 1
  double link_latency = 0.005;      // seconds per radio hop
  double beacon_period = 1.0;       // seconds between neighbor beacons

  void validate() const;
};

// Full parameter surface of one run. Every default is overridable from the
// config file or command line; validate() rejects inconsistent combinations.
struct SimConfig {
  std::uint64_t seed = 1;
  double duration = 600.0;  // seconds of virtual time
  int n_peers = 50;

  MobilityParams mobility;
  EnergyParams energy;
  WorkloadParams content;
  ScoringParams protocol;
  NetParams net;

  AffinityMode affinity_mode = AffinityMode::Oracle;
  std::vector<double> cpu_choices = {1.0, 2.0, 4.0};
  double pending_cache_factor = 2.0;  // pending-query cache lives factor*max_t

  void validate() const;  // throws BadConfigError
};

Protocol protocol_from_string(const std::string& name);       // throws BadConfigError
std::string to_string(Protocol protocol);
AffinityMode affinity_mode_from_string(const std::string& s);  // throws BadConfigError
std::string to_string(AffinityMode mode);

// Shortest round-trip decimal representation; used everywhere a float is
// printed outside JSON so logs and CSVs are byte-stable.
std::string format_double(double value);

}  // namespace cdpsim
