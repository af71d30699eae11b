#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "cdpsim/config.hpp"
#include "cdpsim/simulation.hpp"
#include "cdpsim/workload.hpp"

namespace cdpsim::testing {

// Independent cosine oracle: plain map arithmetic, no TermVector internals.
inline double cosine_oracle(const std::vector<std::pair<TermId, double>>& a,
                            const std::vector<std::pair<TermId, double>>& b) {
  std::map<TermId, double> ma(a.begin(), a.end());
  std::map<TermId, double> mb(b.begin(), b.end());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, w] : ma) {
    na += w * w;
    auto it = mb.find(t);
    if (it != mb.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : mb) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Hand-built workload for protocol tests. Relevance is recomputed with the
// production match rule so outcomes stay comparable.
inline Workload make_workload(int n_peers, std::vector<Document> docs,
                              std::vector<std::vector<DocId>> placement,
                              std::vector<Query> queries, double theta = 0.8) {
  Workload w;
  w.n_peers = n_peers;
  w.theta_match = theta;
  w.documents = std::move(docs);
  w.placement = std::move(placement);
  w.queries = std::move(queries);
  for (const Query& q : w.queries) {
    std::vector<DocId> rel;
    for (const Document& d : w.documents) {
      if (matches(d, q.terms, theta)) rel.push_back(d.doc_id);
    }
    w.relevance.push_back(std::move(rel));
  }
  return w;
}

// Config tuned for deterministic hand-traceable protocol tests: static
// world, no battery drain, fast service.
inline SimConfig test_config(int n_peers, double duration = 30.0) {
  SimConfig cfg;
  cfg.seed = 7;
  cfg.n_peers = n_peers;
  cfg.duration = duration;
  cfg.mobility.enabled = false;
  cfg.energy.drain_enabled = false;
  cfg.net.base_service_rate = 100.0;
  cfg.cpu_choices = {1.0};
  return cfg;
}

struct TraceLog {
  std::vector<TraceEvent> events;

  void attach(Simulation& sim) {
    sim.set_trace_sink([this](const TraceEvent& ev) { events.push_back(ev); });
  }

  std::vector<TraceEvent> of_type(const std::string& type) const {
    std::vector<TraceEvent> out;
    for (const TraceEvent& ev : events) {
      if (type == ev.type) out.push_back(ev);
    }
    return out;
  }
};

inline TermVector tv(std::vector<std::pair<TermId, double>> entries) {
  return TermVector(std::move(entries));
}

}  // namespace cdpsim::testing
