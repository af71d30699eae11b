#include "cdpsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cdpsim/errors.hpp"

namespace cdpsim {
namespace {

// Inverse-CDF sampler over ranks 1..n with weight 1/rank^s. Rank r maps to
// index r-1, so low indices are the popular ones.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double s) {
    cumulative_.reserve(n);
    double total = 0.0;
    for (std::size_t r = 1; r <= n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r), s);
      cumulative_.push_back(total);
    }
  }

  std::size_t draw(RngStream& rng) const {
    const double u = rng.uniform01() * cumulative_.back();
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

TermVector make_query_terms(const Document& seed, int core_terms, int noise_terms,
                            const ZipfSampler& vocab_zipf, RngStream& rng) {
  // Core: the seed document's heaviest terms, with the document's weights.
  std::vector<TermVector::Entry> ranked = seed.terms.entries();
  std::sort(ranked.begin(), ranked.end(),
            [](const TermVector::Entry& a, const TermVector::Entry& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (ranked.size() > static_cast<std::size_t>(core_terms)) {
    ranked.resize(static_cast<std::size_t>(core_terms));
  }
  TermVector q{std::vector<TermVector::Entry>(ranked)};
  for (int i = 0; i < noise_terms; ++i) {
    const TermId t = static_cast<TermId>(vocab_zipf.draw(rng));
    if (q.weight(t) == 0.0) q.add(t, 1.0);
  }
  return q;
}

std::vector<DocId> scan_relevance(const std::vector<Document>& docs,
                                  const TermVector& q, double theta) {
  std::vector<DocId> out;
  for (const Document& d : docs) {
    if (matches(d, q, theta)) out.push_back(d.doc_id);
  }
  return out;
}

}  // namespace

void WorkloadParams::validate(int n_peers) const {
  if (n_peers <= 0) throw BadConfigError("content: n_peers must be > 0");
  if (n_docs < 1) throw BadConfigError("content.docs must be >= 1");
  if (n_queries < 1) throw BadConfigError("content.queries must be >= 1");
  if (vocab_size < query_core_terms + query_noise_terms) {
    throw BadConfigError("content.vocab smaller than the query length");
  }
  if (replication < 1 || replication > n_peers) {
    throw BadConfigError("content.replication must be in [1, n_peers]");
  }
  if (theta_match < 0.0 || theta_match > 1.0) {
    throw BadConfigError("content.theta_match must be in [0, 1]");
  }
  if (doc_len_min < 1 || doc_len_max < doc_len_min) {
    throw BadConfigError("content.doc_len window must satisfy 1 <= min <= max");
  }
  if (query_core_terms < 1) throw BadConfigError("content.query_core_terms must be >= 1");
  if (query_noise_terms < 0) throw BadConfigError("content.query_noise_terms must be >= 0");
  if (zipf_s < 0.0 || query_seed_zipf < 0.0) {
    throw BadConfigError("content zipf exponents must be >= 0");
  }
  if (issue_min < 0.0 || issue_max < issue_min) {
    throw BadConfigError("content.issue window must satisfy 0 <= min <= max");
  }
}

bool matches(const Document& doc, const TermVector& query, double theta_match) {
  if (doc.terms.empty() || query.empty()) return false;
  return cosine(doc.terms, query) >= theta_match;
}

Workload generate_workload(const WorkloadParams& params, int n_peers,
                           RngRegistry& rng) {
  params.validate(n_peers);

  Workload w;
  w.n_peers = n_peers;
  w.theta_match = params.theta_match;

  // Corpus. Draws depend only on the doc stream, so the same seed yields the
  // same corpus for any peer count.
  RngStream& doc_rng = rng.stream("workload.docs");
  const ZipfSampler vocab_zipf(static_cast<std::size_t>(params.vocab_size),
                               params.zipf_s);
  w.documents.reserve(static_cast<std::size_t>(params.n_docs));
  for (int i = 0; i < params.n_docs; ++i) {
    const int len = params.doc_len_min +
                    static_cast<int>(doc_rng.uniform_index(static_cast<std::size_t>(
                        params.doc_len_max - params.doc_len_min + 1)));
    std::vector<TermId> occurrences;
    occurrences.reserve(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) {
      occurrences.push_back(static_cast<TermId>(vocab_zipf.draw(doc_rng)));
    }
    w.documents.push_back({static_cast<DocId>(i), TermVector::from_counts(occurrences)});
  }

  // Placement: each document on `replication` distinct uniform peers.
  RngStream& place_rng = rng.stream("workload.placement");
  w.placement.assign(static_cast<std::size_t>(n_peers), {});
  for (const Document& d : w.documents) {
    const auto hosts = place_rng.sample_without_replacement(
        static_cast<std::size_t>(n_peers), static_cast<std::size_t>(params.replication));
    for (std::size_t h : hosts) w.placement[h].push_back(d.doc_id);
  }
  for (auto& docs : w.placement) std::sort(docs.begin(), docs.end());

  // Queries: seed documents drawn with popularity skew; retry noise draws
  // that leave the relevance set empty, falling back to the seed vector
  // itself (cosine 1) so relevance is never empty.
  RngStream& query_rng = rng.stream("workload.queries");
  const ZipfSampler seed_zipf(w.documents.size(), params.query_seed_zipf);
  w.queries.reserve(static_cast<std::size_t>(params.n_queries));
  w.relevance.reserve(static_cast<std::size_t>(params.n_queries));
  for (int i = 0; i < params.n_queries; ++i) {
    TermVector terms;
    std::vector<DocId> rel;
    const Document* seed = nullptr;
    for (int attempt = 0; attempt < 4 && rel.empty(); ++attempt) {
      seed = &w.documents[seed_zipf.draw(query_rng)];
      terms = make_query_terms(*seed, params.query_core_terms,
                               params.query_noise_terms, vocab_zipf, query_rng);
      rel = scan_relevance(w.documents, terms, params.theta_match);
    }
    if (rel.empty()) {
      // The seed vector itself always matches the seed document.
      terms = seed->terms;
      rel = scan_relevance(w.documents, terms, params.theta_match);
    }
    Query q;
    q.query_id = static_cast<QueryId>(i);
    q.terms = terms;
    q.origin = static_cast<PeerId>(query_rng.uniform_index(static_cast<std::size_t>(n_peers)));
    q.issue_time = query_rng.uniform(params.issue_min, params.issue_max);
    w.queries.push_back(std::move(q));
    w.relevance.push_back(std::move(rel));
  }
  return w;
}

namespace {

nlohmann::json terms_to_json(const TermVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [term, weight] : v.entries()) {
    arr.push_back(nlohmann::json::array({term, weight}));
  }
  return arr;
}

TermVector terms_from_json(const nlohmann::json& arr) {
  std::vector<TermVector::Entry> entries;
  for (const auto& e : arr) {
    entries.emplace_back(e.at(0).get<TermId>(), e.at(1).get<double>());
  }
  return TermVector(std::move(entries));
}

}  // namespace

nlohmann::json Workload::to_json() const {
  nlohmann::json j;
  j["n_peers"] = n_peers;
  j["theta_match"] = theta_match;
  nlohmann::json docs = nlohmann::json::array();
  for (const Document& d : documents) {
    docs.push_back({{"id", d.doc_id}, {"terms", terms_to_json(d.terms)}});
  }
  j["documents"] = std::move(docs);
  j["placement"] = placement;
  nlohmann::json qs = nlohmann::json::array();
  for (const Query& q : queries) {
    qs.push_back({{"id", q.query_id},
                  {"origin", q.origin},
                  {"issue_time", q.issue_time},
                  {"terms", terms_to_json(q.terms)}});
  }
  j["queries"] = std::move(qs);
  j["relevance"] = relevance;
  return j;
}

std::string Workload::to_json_string() const { return to_json().dump(2) + "\n"; }

Workload Workload::from_json(const nlohmann::json& j) {
  Workload w;
  w.n_peers = j.at("n_peers").get<int>();
  w.theta_match = j.at("theta_match").get<double>();
  for (const auto& d : j.at("documents")) {
    w.documents.push_back({d.at("id").get<DocId>(), terms_from_json(d.at("terms"))});
  }
  w.placement = j.at("placement").get<std::vector<std::vector<DocId>>>();
  for (const auto& q : j.at("queries")) {
    Query parsed;
    parsed.query_id = q.at("id").get<QueryId>();
    parsed.origin = q.at("origin").get<PeerId>();
    parsed.issue_time = q.at("issue_time").get<double>();
    parsed.terms = terms_from_json(q.at("terms"));
    w.queries.push_back(std::move(parsed));
  }
  w.relevance = j.at("relevance").get<std::vector<std::vector<DocId>>>();

  // Structural invariants.
  if (w.n_peers <= 0) throw BadConfigError("workload: n_peers must be > 0");
  if (w.placement.size() != static_cast<std::size_t>(w.n_peers)) {
    throw BadConfigError("workload: placement size != n_peers");
  }
  for (const auto& docs : w.placement) {
    for (DocId d : docs) {
      if (d >= w.documents.size()) {
        throw BadConfigError("workload: placed doc_id has no document");
      }
    }
  }
  if (w.relevance.size() != w.queries.size()) {
    throw BadConfigError("workload: relevance size != query count");
  }
  for (const auto& rel : w.relevance) {
    if (rel.empty()) throw BadConfigError("workload: query with empty relevance set");
  }
  for (const Query& q : w.queries) {
    if (q.terms.empty()) throw BadConfigError("workload: query with empty terms");
    if (q.origin >= static_cast<PeerId>(w.n_peers)) {
      throw BadConfigError("workload: query origin out of range");
    }
  }
  return w;
}

Workload Workload::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfigError("cannot open workload file: " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

void Workload::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw SimError("cannot write workload file: " + path);
  out << to_json_string();
}

}  // namespace cdpsim
