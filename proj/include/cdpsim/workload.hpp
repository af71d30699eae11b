#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cdpsim/rng.hpp"
#include "cdpsim/scoring.hpp"
#include "cdpsim/term_vector.hpp"

namespace cdpsim {

using DocId = std::uint32_t;
using QueryId = std::uint32_t;

struct WorkloadParams {
  int n_docs = 1700;
  int n_queries = 200;
  int vocab_size = 2000;
  double zipf_s = 1.0;      // term-frequency skew
  int replication = 2;      // copies of each document
  double theta_match = 0.8; // cosine threshold for a local hit
  int doc_len_min = 10;     // term occurrences per document
  int doc_len_max = 30;
  int query_core_terms = 3; // top seed-document terms per query
  int query_noise_terms = 1;
  double query_seed_zipf = 0.8; // popularity skew of query targets
  double issue_min = 50.0;      // query issue window, seconds
  double issue_max = 500.0;

  void validate(int n_peers) const;  // throws BadConfigError
};

struct Document {
  DocId doc_id = 0;
  TermVector terms;
};

struct Query {
  QueryId query_id = 0;
  TermVector terms;
  PeerId origin = 0;
  double issue_time = 0.0;
};

// Synthetic corpus, placement, query stream and exhaustive ground-truth
// relevance. Immutable once generated; shared read-only by a run.
struct Workload {
  int n_peers = 0;
  double theta_match = 0.8;
  std::vector<Document> documents;
  std::vector<std::vector<DocId>> placement;  // peer id -> sorted doc ids
  std::vector<Query> queries;
  std::vector<std::vector<DocId>> relevance;  // query id -> sorted doc ids

  nlohmann::json to_json() const;
  std::string to_json_string() const;
  static Workload from_json(const nlohmann::json& j);
  static Workload load_file(const std::string& path);
  void save_file(const std::string& path) const;
};

// True iff the document matches the query at the given cosine threshold.
bool matches(const Document& doc, const TermVector& query, double theta_match);

// Zipf-distributed documents, uniform placement on `replication` peers per
// document, queries derived from (popularity-skewed) seed documents, and
// relevance computed by exhaustive scan. Every query has a non-empty
// relevance set. Deterministic in the registry's master seed.
Workload generate_workload(const WorkloadParams& params, int n_peers,
                           RngRegistry& rng);

}  // namespace cdpsim
