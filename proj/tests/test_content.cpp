#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cdpsim/errors.hpp"
#include "cdpsim/rng.hpp"
#include "cdpsim/term_vector.hpp"
#include "cdpsim/workload.hpp"
#include "helpers.hpp"

using namespace cdpsim;
using cdpsim::testing::cosine_oracle;
using cdpsim::testing::tv;

TEST_CASE("cosine of a vector with itself is 1") {
  const TermVector a = tv({{1, 2.0}, {7, 0.5}});
  CHECK(cosine(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cosine of disjoint supports is 0") {
  CHECK(cosine(tv({{1, 1.0}}), tv({{2, 1.0}})) == 0.0);
}

TEST_CASE("cosine of half-overlapping unit pairs is 0.5") {
  const TermVector a = tv({{1, 1.0}, {2, 1.0}});
  const TermVector b = tv({{1, 1.0}, {3, 1.0}});
  CHECK(cosine(a, b) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("cosine rejects empty vectors") {
  CHECK_THROWS_AS(cosine(TermVector{}, tv({{1, 1.0}})), EmptyVectorError);
  CHECK_THROWS_AS(cosine(tv({{1, 1.0}}), TermVector{}), EmptyVectorError);
}

namespace {

TermVector random_vector(RngStream& rng) {
  std::vector<TermVector::Entry> entries;
  const std::size_t n = 1 + rng.uniform_index(8);
  for (std::size_t i = 0; i < n; ++i) {
    entries.emplace_back(static_cast<TermId>(rng.uniform_index(20)),
                         rng.uniform(0.01, 5.0));
  }
  return TermVector(std::move(entries));
}

}  // namespace

TEST_CASE("cosine is symmetric and scale invariant") {
  RngStream rng(11, "cosine-prop");
  for (int i = 0; i < 2000; ++i) {
    const TermVector a = random_vector(rng);
    const TermVector b = random_vector(rng);
    const double ab = cosine(a, b);
    CHECK(ab == doctest::Approx(cosine(b, a)).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    // Scale one side by c > 0.
    const double c = rng.uniform(0.1, 10.0);
    std::vector<TermVector::Entry> scaled;
    for (auto [t, w] : a.entries()) scaled.emplace_back(t, c * w);
    CHECK(cosine(TermVector(std::move(scaled)), b) ==
          doctest::Approx(ab).epsilon(1e-12));
    // Independent oracle.
    CHECK(ab == doctest::Approx(cosine_oracle(a.entries(), b.entries())).epsilon(1e-12));
  }
}

TEST_CASE("term vectors never store non-positive weights") {
  TermVector v = tv({{3, 1.0}, {3, 2.0}, {5, 0.0}, {9, -1.0}});
  CHECK(v.size() == 1);          // id 3 merged, 5 and 9 dropped
  CHECK(v.weight(3) == 3.0);
  v.add(3, -3.0);
  CHECK(v.empty());
}

TEST_CASE("matches applies the >= threshold convention") {
  const Document doc{0, tv({{1, 1.0}, {2, 1.0}})};
  CHECK(matches(doc, doc.terms, 0.8));                 // cosine 1
  CHECK_FALSE(matches(doc, tv({{9, 1.0}}), 0.1));      // cosine 0
  const double boundary = cosine(doc.terms, tv({{1, 1.0}}));
  CHECK(matches(doc, tv({{1, 1.0}}), boundary));       // exactly at threshold
}

namespace {

WorkloadParams small_params() {
  WorkloadParams p;
  p.n_docs = 120;
  p.n_queries = 25;
  p.vocab_size = 150;
  p.replication = 2;
  return p;
}

}  // namespace

TEST_CASE("every generated query has a non-empty relevance set") {
  RngRegistry reg(3);
  const Workload w = generate_workload(small_params(), 10, reg);
  REQUIRE(w.queries.size() == 25);
  for (const auto& rel : w.relevance) CHECK_FALSE(rel.empty());
}

TEST_CASE("replication 1 places each document on exactly one peer") {
  WorkloadParams p = small_params();
  p.replication = 1;
  RngRegistry reg(3);
  const Workload w = generate_workload(p, 10, reg);
  std::map<DocId, int> copies;
  for (const auto& docs : w.placement) {
    for (DocId d : docs) ++copies[d];
  }
  CHECK(copies.size() == w.documents.size());
  for (const auto& [d, n] : copies) CHECK(n == 1);
}

TEST_CASE("generation is deterministic in the seed") {
  RngRegistry a(17), b(17), c(18);
  const WorkloadParams p = small_params();
  CHECK(generate_workload(p, 10, a).to_json_string() ==
        generate_workload(p, 10, b).to_json_string());
  CHECK(generate_workload(p, 10, a).to_json_string() !=
        generate_workload(p, 10, c).to_json_string());
}

TEST_CASE("relevance matches an independent full-corpus re-scan") {
  RngRegistry reg(5);
  const Workload w = generate_workload(small_params(), 10, reg);
  for (const Query& q : w.queries) {
    std::vector<DocId> rescan;
    for (const Document& d : w.documents) {
      if (cosine_oracle(d.terms.entries(), q.terms.entries()) >= w.theta_match) {
        rescan.push_back(d.doc_id);
      }
    }
    CHECK(rescan == w.relevance[q.query_id]);
  }
}

TEST_CASE("placement stays within the peer set and documents exist") {
  RngRegistry reg(5);
  const Workload w = generate_workload(small_params(), 7, reg);
  CHECK(w.placement.size() == 7);
  for (const auto& docs : w.placement) {
    for (DocId d : docs) CHECK(d < w.documents.size());
  }
}

TEST_CASE("workload JSON round-trips") {
  RngRegistry reg(9);
  const Workload w = generate_workload(small_params(), 6, reg);
  const Workload back = Workload::from_json(w.to_json());
  CHECK(back.to_json_string() == w.to_json_string());
}

TEST_CASE("bad generation parameters are rejected") {
  WorkloadParams p = small_params();
  p.vocab_size = 2;  // smaller than core + noise terms
  CHECK_THROWS_AS((void)p.validate(5), BadConfigError);
  WorkloadParams q = small_params();
  CHECK_THROWS_AS((void)q.validate(0), BadConfigError);
  WorkloadParams r = small_params();
  r.replication = 11;
  CHECK_THROWS_AS((void)r.validate(10), BadConfigError);
}

TEST_CASE("queries issue inside the configured window with valid origins") {
  WorkloadParams p = small_params();
  p.issue_min = 10.0;
  p.issue_max = 20.0;
  RngRegistry reg(2);
  const Workload w = generate_workload(p, 9, reg);
  for (const Query& q : w.queries) {
    CHECK(q.issue_time >= 10.0);
    CHECK(q.issue_time <= 20.0);
    CHECK(q.origin < 9);
    CHECK_FALSE(q.terms.empty());
  }
}
