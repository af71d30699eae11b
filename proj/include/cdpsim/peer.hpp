#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "cdpsim/affinity.hpp"
#include "cdpsim/energy.hpp"
#include "cdpsim/messages.hpp"
#include "cdpsim/mobility.hpp"
#include "cdpsim/scoring.hpp"

namespace cdpsim {

// What a peer knows about one neighbor from its beacons: advertised cpu and
// queue utilization, the last two energy samples (the Rtime inputs) and a
// window of distance samples (the affinity-estimator inputs).
struct NeighborObservation {
  double cpu = 1.0;
  double utilization = 0.0;
  double last_beacon = -1.0;
  bool has_two_energy_samples = false;
  double t_prev = 0.0, energy_prev = 0.0;
  double t_last = 0.0, energy_last = 0.0;
  AffinityWindow distances{8};

  void record_beacon(double t, double cpu_adv, double u_adv, double energy,
                     double distance);
};

struct PendingQuery {
  TermVector terms;
  double expires = 0.0;
};

// One mobile peer. Mutated only by its run's event loop.
struct PeerState {
  PeerId peer_id = 0;
  KinematicState kinematics;
  EnergyState energy;
  double cpu = 1.0;

  std::deque<Message> queue;  // FIFO of pending messages
  bool servicing = false;

  std::vector<DocId> shared_docs;  // sorted
  std::map<PeerId, NeighborProfile> profiles;
  std::set<QueryId> seen_queries;
  std::map<PeerId, NeighborObservation> observations;
  std::map<QueryId, PendingQuery> pending_queries;

  bool alive() const { return energy.connected; }

  // Queue utilization u(t) in [0, 1]; 1 means full.
  double utilization(int queue_capacity) const {
    return static_cast<double>(queue.size()) / static_cast<double>(queue_capacity);
  }
};

}  // namespace cdpsim
