#include "cdpsim/simulation.hpp"

#include <algorithm>
#include <cassert>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void NeighborObservation::record_beacon(double t, double cpu_adv, double u_adv,
                                        double energy, double distance) {
  cpu = cpu_adv;
  utilization = u_adv;
  if (last_beacon >= 0.0) {
    t_prev = t_last;
    energy_prev = energy_last;
    has_two_energy_samples = true;
  }
  t_last = t;
  energy_last = energy;
  last_beacon = t;
  distances.record(t, distance);
}

Simulation::Simulation(SimConfig cfg, Workload workload, SimOverrides overrides)
    : cfg_(std::move(cfg)), workload_(std::move(workload)), rng_(cfg_.seed) {
  const int n = cfg_.n_peers;
  if (workload_.n_peers != n) {
    throw BadConfigError("workload peer count does not match sim.peers");
  }

  RngStream& pos_rng = rng_.stream("mobility.init");
  RngStream& cpu_rng = rng_.stream("peer.cpu");
  RngStream& energy_rng = rng_.stream("energy.init");

  peers_.resize(static_cast<std::size_t>(n));
  mobility_streams_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    PeerState& p = peers_[static_cast<std::size_t>(i)];
    p.peer_id = static_cast<PeerId>(i);
    const Vec2 pos = overrides.positions.empty()
                         ? draw_position(cfg_.mobility, pos_rng)
                         : overrides.positions.at(static_cast<std::size_t>(i));
    p.kinematics = KinematicState(pos, 0.0);
    p.cpu = overrides.cpus.empty()
                ? cfg_.cpu_choices[cpu_rng.uniform_index(cfg_.cpu_choices.size())]
                : overrides.cpus.at(static_cast<std::size_t>(i));
    p.energy.energy = overrides.energies.empty()
                          ? energy_rng.uniform(cfg_.energy.initial_min,
                                               cfg_.energy.initial_max)
                          : overrides.energies.at(static_cast<std::size_t>(i));
    p.energy.connected = p.energy.energy > cfg_.energy.shutdown;
    p.shared_docs = workload_.placement.at(static_cast<std::size_t>(i));
    mobility_streams_[static_cast<std::size_t>(i)] =
        &rng_.stream("mobility.peer." + std::to_string(i));
  }

  outcomes_.resize(workload_.queries.size());
  for (std::size_t q = 0; q < workload_.queries.size(); ++q) {
    outcomes_[q].query_id = static_cast<QueryId>(q);
  }
}

void Simulation::set_trace_sink(std::function<void(const TraceEvent&)> sink) {
  trace_ = std::move(sink);
}

void Simulation::attach_event_log(std::string* log) {
  event_log_ = log;
  engine_.set_dispatch_sink([this](const Event& ev) {
    if (!event_log_) return;
    event_log_->append(std::to_string(ev.seq));
    event_log_->push_back('\t');
    event_log_->append(format_double(ev.time));
    event_log_->push_back('\t');
    event_log_->append(to_string(ev.kind));
    event_log_->push_back('\n');
  });
}

void Simulation::trace(double t, const char* type, PeerId from, PeerId to,
                       QueryId qid) {
  if (trace_) trace_(TraceEvent{t, type, from, to, qid});
}

void Simulation::advance_peer(PeerId id, double t) {
  PeerState& p = peers_[id];
  p.kinematics.advance_to(t, cfg_.mobility, *mobility_streams_[id]);
}

Vec2 Simulation::position_of(PeerId id, double t) {
  advance_peer(id, t);
  return peers_[id].kinematics.position_at(t);
}

bool Simulation::in_range(PeerId a, PeerId b, double t) {
  if (!peers_[a].alive() || !peers_[b].alive()) return false;
  return euclidean_distance(position_of(a, t), position_of(b, t)) <=
         cfg_.mobility.radio_range;
}

std::vector<PeerId> Simulation::neighbors_of(PeerId id, double t) {
  std::vector<PeerId> out;
  if (!peers_[id].alive()) return out;
  const Vec2 here = position_of(id, t);
  for (const PeerState& other : peers_) {
    if (other.peer_id == id || !other.alive()) continue;
    if (euclidean_distance(here, position_of(other.peer_id, t)) <=
        cfg_.mobility.radio_range) {
      out.push_back(other.peer_id);
    }
  }
  return out;
}

void Simulation::schedule_tick(double t, EventKind kind) {
  if (t > cfg_.duration) return;
  engine_.schedule(t, kind, [this, t, kind]() {
    if (kind == EventKind::MobilityTick) {
      world_tick(t);
    } else {
      energy_tick(t);
    }
    schedule_tick(t + cfg_.net.beacon_period, kind);
  });
}

void Simulation::run() {
  const double dt = cfg_.net.beacon_period;
  schedule_tick(0.0, EventKind::MobilityTick);
  schedule_tick(dt / 2.0, EventKind::EnergyTick);

  for (const Query& q : workload_.queries) {
    if (q.issue_time > cfg_.duration) continue;
    engine_.schedule(q.issue_time, EventKind::QueryIssue,
                     [this, qid = q.query_id]() { issue_query(qid); });
  }
  engine_.schedule(cfg_.duration, EventKind::RunEnd, []() {});
  engine_.run_until(cfg_.duration);
}

void Simulation::world_tick(double t) {
  const double range = cfg_.mobility.radio_range;
  std::vector<Vec2> pos(peers_.size());
  for (const PeerState& p : peers_) {
    if (p.alive()) pos[p.peer_id] = position_of(p.peer_id, t);
  }
  // Beacon exchange between alive peers in mutual range.
  for (std::size_t i = 0; i < peers_.size(); ++i) {
    if (!peers_[i].alive()) continue;
    for (std::size_t j = i + 1; j < peers_.size(); ++j) {
      if (!peers_[j].alive()) continue;
      const double d = euclidean_distance(pos[i], pos[j]);
      if (d > range) continue;
      PeerState& a = peers_[i];
      PeerState& b = peers_[j];
      a.observations[b.peer_id].record_beacon(
          t, b.cpu, b.utilization(cfg_.net.queue_capacity), b.energy.energy, d);
      b.observations[a.peer_id].record_beacon(
          t, a.cpu, a.utilization(cfg_.net.queue_capacity), a.energy.energy, d);
    }
  }
}

void Simulation::energy_tick(double t) {
  for (PeerState& p : peers_) {
    if (!p.alive()) continue;
    consume(p.energy, cfg_.energy, EnergyAction::IdleTick, cfg_.net.beacon_period);
    if (!p.alive()) on_death(p, t);
  }
}

void Simulation::on_death(PeerState& p, double t) {
  for (const Message& m : p.queue) {
    if (is_hit(m)) {
      ++counters_.hits_lost;
      trace(t, "hit_lost", p.peer_id, p.peer_id, std::get<QueryHitMsg>(m).query_id);
    }
  }
  p.queue.clear();
  p.servicing = false;
  trace(t, "peer_shutdown", p.peer_id, p.peer_id, 0);
}

std::vector<DocId> Simulation::local_matches(const PeerState& p,
                                             const TermVector& terms) const {
  std::vector<DocId> out;
  for (DocId d : p.shared_docs) {
    if (matches(workload_.documents[d], terms, workload_.theta_match)) {
      out.push_back(d);
    }
  }
  return out;
}

void Simulation::issue_query(QueryId query_id) {
  const Query& q = workload_.queries[query_id];
  const double t = engine_.now();
  QueryOutcome& out = outcomes_[query_id];
  out.issued = true;
  out.issue_time = t;
  ++counters_.queries_issued;

  PeerState& origin = peers_[q.origin];
  if (!origin.alive()) return;  // issued into the void; stays unresolved

  const std::vector<DocId> own = local_matches(origin, q.terms);
  if (!own.empty()) {
    out.retrieved.insert(own.begin(), own.end());
    out.first_hit_time = t;  // local hit resolves with zero delay
    trace(t, "self_hit", q.origin, q.origin, query_id);
  }
  origin.seen_queries.insert(query_id);
  origin.pending_queries[query_id] = {
      q.terms, t + cfg_.pending_cache_factor * cfg_.protocol.max_t};

  QueryMsg msg;
  msg.query_id = query_id;
  msg.origin = q.origin;
  msg.terms = q.terms;
  msg.ttl_remaining = cfg_.protocol.ttl;
  msg.path = {q.origin};
  msg.issue_time = t;
  forward_query(origin, msg, t);
}

std::vector<PeerId> Simulation::eligible_neighbors(PeerState& from,
                                                   const QueryMsg& msg, double t) {
  std::vector<PeerId> eligible;
  for (PeerId j : neighbors_of(from.peer_id, t)) {
    if (std::find(msg.path.begin(), msg.path.end(), j) == msg.path.end()) {
      eligible.push_back(j);
    }
  }
  return eligible;
}

std::vector<PeerId> Simulation::cdp_targets(PeerState& from, const QueryMsg& msg,
                                            double t) {
  std::vector<ScoredPeer> scored;
  const Vec2 pos_i = position_of(from.peer_id, t);
  const Vec2 vel_i = from.kinematics.velocity_at(t);
  for (PeerId j : eligible_neighbors(from, msg, t)) {
    double cpu_adv = 1.0;
    double u_adv = 0.0;
    double rtime_j = cfg_.energy.rtime_cap;
    double affinity_j = cfg_.mobility.affinity_cap;
    auto it = from.observations.find(j);
    const NeighborObservation* obs =
        it == from.observations.end() ? nullptr : &it->second;
    if (obs) {
      cpu_adv = obs->cpu;
      u_adv = obs->utilization;
      if (obs->has_two_energy_samples) {
        rtime_j = rtime(obs->t_prev, obs->energy_prev, obs->t_last,
                        obs->energy_last, cfg_.protocol.min_energy,
                        cfg_.energy.rtime_cap);
      }
    }
    if (cfg_.affinity_mode == AffinityMode::Oracle) {
      affinity_j =
          affinity_oracle(pos_i, vel_i, position_of(j, t),
                          peers_[j].kinematics.velocity_at(t),
                          cfg_.mobility.radio_range, cfg_.mobility.affinity_cap);
    } else if (obs && obs->distances.size() >= 2) {
      affinity_j = obs->distances.estimate(cfg_.mobility.radio_range,
                                           cfg_.mobility.affinity_cap);
    }
    const double load_val = load(cpu_adv, std::min(u_adv, 1.0));
    const double s = stability(rtime_j, affinity_j);
    double psim_val = 0.0;
    auto prof = from.profiles.find(j);
    if (prof != from.profiles.end()) psim_val = psim(prof->second, msg.terms);
    scored.push_back({j, pertinence(s, load_val, psim_val, cfg_.protocol)});
  }
  return select_top_k(std::move(scored),
                      static_cast<std::size_t>(cfg_.protocol.k));
}

std::vector<PeerId> Simulation::gossiping_lb_targets(PeerState& from,
                                                     const QueryMsg& msg,
                                                     double t) {
  std::vector<PeerId> eligible = eligible_neighbors(from, msg, t);
  if (eligible.empty()) return {};
  RngStream& stream = rng_.stream("protocol");
  // Weight floor keeps full-queue neighbors reachable with tiny probability.
  constexpr double kFloor = 0.01;
  std::vector<double> weight(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    double u_adv = 0.0;
    auto it = from.observations.find(eligible[i]);
    if (it != from.observations.end()) u_adv = std::min(it->second.utilization, 1.0);
    weight[i] = (1.0 - u_adv) + kFloor;
  }
  std::vector<PeerId> picked;
  const std::size_t k =
      std::min(static_cast<std::size_t>(cfg_.protocol.k), eligible.size());
  while (picked.size() < k) {
    double total = 0.0;
    for (double w : weight) total += w;
    double u = stream.uniform01() * total;
    std::size_t chosen = eligible.size() - 1;
    for (std::size_t i = 0; i < eligible.size(); ++i) {
      if (weight[i] <= 0.0) continue;
      if (u < weight[i]) {
        chosen = i;
        break;
      }
      u -= weight[i];
    }
    picked.push_back(eligible[chosen]);
    weight[chosen] = 0.0;  // without replacement
  }
  return picked;
}

std::vector<PeerId> Simulation::flooding_targets(PeerState& from,
                                                 const QueryMsg& msg, double t) {
  std::vector<PeerId> eligible = eligible_neighbors(from, msg, t);
  if (eligible.empty()) return {};
  RngStream& stream = rng_.stream("protocol");
  const auto idx = stream.sample_without_replacement(
      eligible.size(), static_cast<std::size_t>(cfg_.protocol.k));
  std::vector<PeerId> picked;
  picked.reserve(idx.size());
  for (std::size_t i : idx) picked.push_back(eligible[i]);
  return picked;
}

void Simulation::forward_query(PeerState& from, const QueryMsg& msg, double t) {
  if (msg.ttl_remaining <= 0) return;
  std::vector<PeerId> targets;
  switch (cfg_.protocol.protocol) {
    case Protocol::CDP: targets = cdp_targets(from, msg, t); break;
    case Protocol::GossipingLB: targets = gossiping_lb_targets(from, msg, t); break;
    case Protocol::Flooding: targets = flooding_targets(from, msg, t); break;
  }
  for (PeerId to : targets) {
    if (!from.alive()) break;  // ran out of battery mid-fanout
    QueryMsg copy = msg;
    copy.ttl_remaining = msg.ttl_remaining - 1;
    copy.path.push_back(to);
    send_message(from, to, Message{std::move(copy)}, t);
  }
}

void Simulation::send_message(PeerState& from, PeerId to, Message msg, double t) {
  ++counters_.messages_sent;
  if (is_hit(msg)) {
    ++counters_.hit_transmissions;
    trace(t, "hit_tx", from.peer_id, to, std::get<QueryHitMsg>(msg).query_id);
  } else {
    const QueryMsg& qm = std::get<QueryMsg>(msg);
    ++counters_.query_transmissions;
    ++budgets_[qm.query_id].transmissions;
    trace(t, "query_tx", from.peer_id, to, qm.query_id);
  }
  consume(from.energy, cfg_.energy, EnergyAction::Tx);
  const double arrival = t + cfg_.net.link_latency;
  engine_.schedule(arrival, EventKind::MessageArrival,
                   [this, to, m = std::move(msg), arrival]() {
                     on_arrival(to, m, arrival);
                   });
  if (!from.alive()) on_death(from, t);
}

void Simulation::on_arrival(PeerId to, const Message& msg, double t) {
  PeerState& p = peers_[to];
  const bool hit = is_hit(msg);
  const QueryId qid = hit ? std::get<QueryHitMsg>(msg).query_id
                          : std::get<QueryMsg>(msg).query_id;
  if (!p.alive()) {
    if (hit) {
      ++counters_.hits_lost;
      trace(t, "hit_lost", to, to, qid);
    }
    return;
  }
  consume(p.energy, cfg_.energy, EnergyAction::Rx);
  if (!p.alive()) {
    on_death(p, t);
    if (hit) ++counters_.hits_lost;
    return;
  }
  if (!hit) {
    const QueryMsg& qm = std::get<QueryMsg>(msg);
    budgets_[qid].receivers.insert(to);
    counters_.max_query_path_len =
        std::max(counters_.max_query_path_len, qm.path.size());
    std::set<PeerId> unique(qm.path.begin(), qm.path.end());
    if (unique.size() != qm.path.size()) ++counters_.path_loop_violations;
    trace(t, "query_rx", qm.path.size() >= 2 ? qm.path[qm.path.size() - 2] : to,
          to, qid);
  } else {
    trace(t, "hit_arrival", to, to, qid);
  }
  if (p.queue.size() >= static_cast<std::size_t>(cfg_.net.queue_capacity)) {
    ++counters_.overflow_drops;
    if (hit) ++counters_.hits_lost;
    trace(t, hit ? "hit_overflow" : "query_overflow", to, to, qid);
    return;
  }
  p.queue.push_back(msg);
  if (!p.servicing) begin_service(p, t);
}

double Simulation::service_time(const PeerState& p) const {
  return 1.0 / (p.cpu * cfg_.net.base_service_rate);
}

void Simulation::begin_service(PeerState& p, double t) {
  p.servicing = true;
  engine_.schedule(t + service_time(p), EventKind::QueueService,
                   [this, id = p.peer_id]() { on_service(id, engine_.now()); });
}

void Simulation::on_service(PeerId id, double t) {
  PeerState& p = peers_[id];
  if (!p.alive()) return;  // death already cleared the queue
  if (p.queue.empty()) {
    p.servicing = false;
    return;
  }
  const Message msg = std::move(p.queue.front());
  p.queue.pop_front();
  if (is_hit(msg)) {
    handle_query_hit(p, std::get<QueryHitMsg>(msg), t);
  } else {
    handle_query(p, std::get<QueryMsg>(msg), t);
  }
  if (!p.alive()) return;
  if (!p.queue.empty()) {
    begin_service(p, t);
  } else {
    p.servicing = false;
  }
}

void Simulation::handle_query(PeerState& p, const QueryMsg& msg, double t) {
  if (p.seen_queries.count(msg.query_id) != 0) {
    ++counters_.duplicate_drops;
    trace(t, "query_dup", p.peer_id, p.peer_id, msg.query_id);
    return;
  }
  p.seen_queries.insert(msg.query_id);
  p.pending_queries[msg.query_id] = {
      msg.terms, t + cfg_.pending_cache_factor * cfg_.protocol.max_t};

  const std::vector<DocId> matched = local_matches(p, msg.terms);
  if (!matched.empty()) {
    ++counters_.hits_emitted;
    QueryHitMsg hit;
    hit.query_id = msg.query_id;
    hit.responder = p.peer_id;
    hit.matched_docs = matched;
    hit.reverse_path.assign(msg.path.rbegin(), msg.path.rend());
    hit.hop_cursor = 0;
    trace(t, "hit_emit", p.peer_id, msg.origin, msg.query_id);
    relay_hit(p, hit, t);
    if (!p.alive()) return;
  }
  forward_query(p, msg, t);
}

void Simulation::relay_hit(PeerState& p, const QueryHitMsg& hit, double t) {
  const PeerId next = hit.reverse_path[hit.hop_cursor + 1];
  if (!in_range(p.peer_id, next, t)) {
    ++counters_.hits_lost;
    trace(t, "hit_lost", p.peer_id, next, hit.query_id);
    return;
  }
  QueryHitMsg copy = hit;
  copy.hop_cursor = hit.hop_cursor + 1;
  send_message(p, next, Message{std::move(copy)}, t);
}

void Simulation::handle_query_hit(PeerState& p, const QueryHitMsg& hit, double t) {
  const PeerId deliverer = hit.reverse_path[hit.hop_cursor - 1];
  auto cached = p.pending_queries.find(hit.query_id);
  if (cached != p.pending_queries.end() && t <= cached->second.expires) {
    auto prof = p.profiles.find(deliverer);
    if (prof == p.profiles.end()) {
      prof = p.profiles
                 .emplace(deliverer, NeighborProfile(cfg_.protocol.profile_capacity))
                 .first;
    }
    prof->second.add(cached->second.terms);
  }
  if (hit.hop_cursor + 1 == hit.reverse_path.size()) {
    QueryOutcome& out = outcomes_[hit.query_id];
    out.retrieved.insert(hit.matched_docs.begin(), hit.matched_docs.end());
    if (!out.resolved()) out.first_hit_time = t;
    ++counters_.hits_delivered;
    trace(t, "hit_delivered", deliverer, p.peer_id, hit.query_id);
  } else {
    relay_hit(p, hit, t);
  }
}

}  // namespace cdpsim
