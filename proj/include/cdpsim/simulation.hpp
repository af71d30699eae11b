#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdpsim/config.hpp"
#include "cdpsim/event_queue.hpp"
#include "cdpsim/messages.hpp"
#include "cdpsim/peer.hpp"
#include "cdpsim/rng.hpp"
#include "cdpsim/workload.hpp"

namespace cdpsim {

struct TraceEvent {
  double t = 0.0;
  const char* type = "";
  PeerId from = 0;
  PeerId to = 0;
  QueryId query_id = 0;
};

struct QueryOutcome {
  QueryId query_id = 0;
  bool issued = false;
  double issue_time = 0.0;
  std::set<DocId> retrieved;
  double first_hit_time = -1.0;  // < 0 while unresolved

  bool resolved() const { return first_hit_time >= 0.0; }
};

struct SimCounters {
  std::uint64_t messages_sent = 0;  // query + hit transmissions
  std::uint64_t query_transmissions = 0;
  std::uint64_t hit_transmissions = 0;
  std::uint64_t hits_emitted = 0;
  std::uint64_t hits_delivered = 0;
  std::uint64_t hits_lost = 0;
  std::uint64_t duplicate_drops = 0;
  std::uint64_t overflow_drops = 0;
  std::uint64_t queries_issued = 0;
  std::size_t max_query_path_len = 0;
  std::uint64_t path_loop_violations = 0;
};

// Per-query forwarding footprint, for budget assertions.
struct QueryBudget {
  std::uint64_t transmissions = 0;
  std::set<PeerId> receivers;
};

// Fixed initial conditions for tests; empty vectors fall back to seeded draws.
struct SimOverrides {
  std::vector<Vec2> positions;
  std::vector<double> cpus;
  std::vector<double> energies;
};

// One simulation run: builds the peer world from (config, seed), plays the
// workload's query stream through the active protocol and collects outcomes.
// Single-threaded; distinct runs share nothing mutable.
class Simulation {
 public:
  Simulation(SimConfig cfg, Workload workload, SimOverrides overrides = {});

  void set_trace_sink(std::function<void(const TraceEvent&)> sink);
  // Appends one "seq <tab> time <tab> kind" line per dispatched event.
  void attach_event_log(std::string* log);

  // Plays the full scenario to cfg.duration.
  void run();

  double now() const { return engine_.now(); }
  const SimConfig& config() const { return cfg_; }
  const Workload& workload() const { return workload_; }
  const std::vector<QueryOutcome>& outcomes() const { return outcomes_; }
  const SimCounters& counters() const { return counters_; }
  const std::map<QueryId, QueryBudget>& query_budgets() const { return budgets_; }
  const PeerState& peer(PeerId id) const { return peers_[id]; }
  std::size_t peer_count() const { return peers_.size(); }

  // Connected peers j != id within radio range at time t, ascending ids.
  std::vector<PeerId> neighbors_of(PeerId id, double t);

  Vec2 position_of(PeerId id, double t);

  // Exposed for protocol-level tests; normal callers only need run().
  void issue_query(QueryId query_id);
  std::vector<PeerId> cdp_targets(PeerState& from, const QueryMsg& msg, double t);
  std::vector<PeerId> gossiping_lb_targets(PeerState& from, const QueryMsg& msg,
                                           double t);
  std::vector<PeerId> flooding_targets(PeerState& from, const QueryMsg& msg,
                                       double t);

  EventQueue& engine() { return engine_; }
  RngRegistry& rng() { return rng_; }

 private:
  SimConfig cfg_;
  Workload workload_;
  RngRegistry rng_;
  EventQueue engine_;
  std::vector<PeerState> peers_;
  std::vector<RngStream*> mobility_streams_;  // one lazy leg stream per peer
  std::vector<QueryOutcome> outcomes_;
  SimCounters counters_;
  std::map<QueryId, QueryBudget> budgets_;
  std::function<void(const TraceEvent&)> trace_;
  std::string* event_log_ = nullptr;

  void trace(double t, const char* type, PeerId from, PeerId to, QueryId qid);
  void schedule_tick(double t, EventKind kind);
  void advance_peer(PeerId id, double t);
  bool in_range(PeerId a, PeerId b, double t);

  void world_tick(double t);
  void energy_tick(double t);
  void on_death(PeerState& p, double t);

  std::vector<DocId> local_matches(const PeerState& p, const TermVector& terms) const;
  void forward_query(PeerState& from, const QueryMsg& msg, double t);
  std::vector<PeerId> eligible_neighbors(PeerState& from, const QueryMsg& msg,
                                         double t);
  void send_message(PeerState& from, PeerId to, Message msg, double t);
  void on_arrival(PeerId to, const Message& msg, double t);
  void begin_service(PeerState& p, double t);
  void on_service(PeerId id, double t);
  void handle_query(PeerState& p, const QueryMsg& msg, double t);
  void handle_query_hit(PeerState& p, const QueryHitMsg& hit, double t);
  void relay_hit(PeerState& p, const QueryHitMsg& hit, double t);
  double service_time(const PeerState& p) const;
};

}  // namespace cdpsim
