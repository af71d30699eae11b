#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "cdpsim/term_vector.hpp"

namespace cdpsim {

using PeerId = std::uint32_t;

enum class Protocol { CDP, GossipingLB, Flooding };

// Recent past queries a neighbor provided answers for. Bounded FIFO: once
// capacity is reached the oldest entry is evicted.
class NeighborProfile {
 public:
  explicit NeighborProfile(std::size_t capacity = 100) : capacity_(capacity) {}

  void add(const TermVector& query);
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::deque<TermVector>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::deque<TermVector> entries_;
};

struct ScoringParams {
  int k = 3;               // neighbors selected per forward
  int ttl = 3;             // hop budget per query
  double load_weight = 0.5;  // L
  double sim_weight = 0.5;   // Sim
  double max_t = 5.0;        // response-wait clamp, seconds of virtual time
  double min_energy = 20.0;  // battery level treated as exhausted
  Protocol protocol = Protocol::CDP;
  std::size_t profile_capacity = 100;
  // When set, the pertinence load term rewards loaded peers verbatim
  // (L * Load) instead of the default inverted form (L * (1 - Load)).
  bool literal_load_term = false;

  void validate() const;  // throws BadConfigError
};

// Mean cosine between the query and each profile entry (profile similarity).
// An empty profile scores 0 so unknown neighbors compete on stability/load.
double psim(const NeighborProfile& profile, const TermVector& query);

// Load(cpu, u) = 1 / (cpu * (1 - u) + 1), in (0, 1]; higher means more loaded.
// Throws BadUtilizationError if u is outside [0, 1].
double load(double cpu, double utilization);

// Usable link lifetime: the smaller of battery time and range residence time.
double stability(double rtime_seconds, double affinity_seconds);

// Composite neighbor score: min(S, MaxT) * (L * (1 - load) + Sim * psim).
// With literal_load_term the load factor enters un-inverted.
double pertinence(double stability_seconds, double load_value, double psim_value,
                  const ScoringParams& params);

struct ScoredPeer {
  PeerId peer = 0;
  double score = 0.0;
};

// The k highest-scoring peers (all of them if fewer than k), ties broken by
// ascending peer id. Deterministic.
std::vector<PeerId> select_top_k(std::vector<ScoredPeer> candidates, std::size_t k);

}  // namespace cdpsim
