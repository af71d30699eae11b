#include "cdpsim/config.hpp"

#include <charconv>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void NetParams::validate() const {
  if (queue_capacity < 1) throw BadConfigError("net.queue_capacity must be >= 1");
  if (base_service_rate <= 0.0) {
    throw BadConfigError("net.base_service_rate must be > 0");
  }
  if (link_latency < 0.0) throw BadConfigError("net.link_latency must be >= 0");
  if (beacon_period <= 0.0) throw BadConfigError("net.beacon_period must be > 0");
}

void SimConfig::validate() const {
  if (n_peers < 2) throw BadConfigError("sim.peers must be >= 2");
  if (duration <= 0.0) throw BadConfigError("sim.duration must be > 0");
  mobility.validate();
  energy.validate();
  content.validate(n_peers);
  protocol.validate();
  net.validate();
  if (duration <= content.issue_max + protocol.max_t) {
    throw BadConfigError(
        "sim.duration must exceed content.issue_max + protocol.max_t");
  }
  if (cpu_choices.empty()) throw BadConfigError("peer.cpu_choices must be non-empty");
  for (double c : cpu_choices) {
    if (c <= 0.0) throw BadConfigError("peer.cpu_choices entries must be > 0");
  }
  if (pending_cache_factor <= 0.0) {
    throw BadConfigError("protocol.pending_cache_factor must be > 0");
  }
}

Protocol protocol_from_string(const std::string& name) {
  if (name == "cdp") return Protocol::CDP;
  if (name == "gossiping_lb") return Protocol::GossipingLB;
  if (name == "flooding") return Protocol::Flooding;
  throw BadConfigError("unknown protocol: " + name +
                       " (expected cdp, gossiping_lb or flooding)");
}

std::string to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::CDP: return "cdp";
    case Protocol::GossipingLB: return "gossiping_lb";
    case Protocol::Flooding: return "flooding";
  }
  return "unknown";
}

AffinityMode affinity_mode_from_string(const std::string& s) {
  if (s == "oracle") return AffinityMode::Oracle;
  if (s == "estimate") return AffinityMode::Estimate;
  throw BadConfigError("unknown affinity mode: " + s +
                       " (expected oracle or estimate)");
}

std::string to_string(AffinityMode mode) {
  return mode == AffinityMode::Oracle ? "oracle" : "estimate";
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace cdpsim
