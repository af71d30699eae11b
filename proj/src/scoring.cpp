#include "cdpsim/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void NeighborProfile::add(const TermVector& query) {
  if (query.empty() || capacity_ == 0) return;
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(query);
}

void ScoringParams::validate() const {
  if (k < 1) throw BadConfigError("protocol.k must be >= 1");
  if (ttl < 1) throw BadConfigError("protocol.ttl must be >= 1");
  if (load_weight < 0.0) throw BadConfigError("protocol.load_weight must be >= 0");
  if (sim_weight < 0.0) throw BadConfigError("protocol.sim_weight must be >= 0");
  if (load_weight + sim_weight <= 0.0) {
    throw BadConfigError("protocol.load_weight + protocol.sim_weight must be > 0");
  }
  if (max_t <= 0.0) throw BadConfigError("protocol.max_t must be > 0");
}

double psim(const NeighborProfile& profile, const TermVector& query) {
  if (profile.empty()) return 0.0;
  double sum = 0.0;
  for (const TermVector& past : profile.entries()) {
    sum += cosine(past, query);
  }
  return sum / static_cast<double>(profile.size());
}

double load(double cpu, double utilization) {
  if (utilization < 0.0 || utilization > 1.0) {
    throw BadUtilizationError("load: utilization outside [0, 1]");
  }
  return 1.0 / (cpu * (1.0 - utilization) + 1.0);
}

double stability(double rtime_seconds, double affinity_seconds) {
  return std::min(rtime_seconds, affinity_seconds);
}

double pertinence(double stability_seconds, double load_value, double psim_value,
                  const ScoringParams& params) {
  const double horizon = std::min(stability_seconds, params.max_t);
  const double load_term =
      params.literal_load_term ? load_value : 1.0 - load_value;
  return horizon * (params.load_weight * load_term + params.sim_weight * psim_value);
}

std::vector<PeerId> select_top_k(std::vector<ScoredPeer> candidates, std::size_t k) {
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredPeer& a, const ScoredPeer& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.peer < b.peer;
            });
  if (candidates.size() > k) candidates.resize(k);
  std::vector<PeerId> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.peer);
  return out;
}

}  // namespace cdpsim
