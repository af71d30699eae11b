#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdpsim/errors.hpp"
#include "cdpsim/rng.hpp"
#include "cdpsim/scoring.hpp"
#include "helpers.hpp"

using namespace cdpsim;
using cdpsim::testing::tv;

TEST_CASE("psim of an empty profile is 0") {
  NeighborProfile prof;
  CHECK(psim(prof, tv({{1, 1.0}})) == 0.0);
}

TEST_CASE("psim of a profile holding the same query is 1") {
  NeighborProfile prof;
  const TermVector q = tv({{1, 2.0}, {4, 1.0}});
  prof.add(q);
  CHECK(psim(prof, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("psim averages over profile entries") {
  NeighborProfile prof;
  const TermVector q = tv({{1, 1.0}});
  prof.add(q);                 // cosine 1
  prof.add(tv({{2, 1.0}}));    // cosine 0
  CHECK(psim(prof, q) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("profile evicts oldest entries at capacity") {
  NeighborProfile prof(2);
  prof.add(tv({{1, 1.0}}));
  prof.add(tv({{2, 1.0}}));
  prof.add(tv({{3, 1.0}}));
  REQUIRE(prof.size() == 2);
  CHECK(prof.entries()[0].weight(2) == 1.0);
  CHECK(prof.entries()[1].weight(3) == 1.0);
}

TEST_CASE("load matches hand-evaluated values") {
  CHECK(load(1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(load(3.0, 0.5) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(load(9.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));  // full queue
}

TEST_CASE("load rejects utilization outside [0,1]") {
  CHECK_THROWS_AS(load(1.0, -0.01), BadUtilizationError);
  CHECK_THROWS_AS(load(1.0, 1.01), BadUtilizationError);
}

TEST_CASE("stability is the minimum of its arguments") {
  CHECK(stability(70.0, 50.0) == 50.0);
  CHECK(stability(0.0, 123.0) == 0.0);
  CHECK(stability(1e6, 1e6) == 1e6);
}

TEST_CASE("pertinence matches the hand-evaluated example") {
  ScoringParams params;  // L = Sim = 0.5, MaxT = 5
  CHECK(pertinence(10.0, 0.4, 0.8, params) == doctest::Approx(3.5).epsilon(1e-9));
}

TEST_CASE("zero stability forces zero pertinence") {
  ScoringParams params;
  CHECK(pertinence(0.0, 0.0, 1.0, params) == 0.0);
}

TEST_CASE("a fully loaded dissimilar neighbor scores zero under inversion") {
  ScoringParams params;
  CHECK(pertinence(4.0, 1.0, 0.0, params) == 0.0);
}

TEST_CASE("literal load term rewards loaded peers verbatim") {
  ScoringParams params;
  params.literal_load_term = true;
  // min(10, 5) * (0.5*0.4 + 0.5*0.8)
  CHECK(pertinence(10.0, 0.4, 0.8, params) == doctest::Approx(3.0).epsilon(1e-9));
  // Under the literal form a fully loaded neighbor is rewarded, not shunned.
  CHECK(pertinence(4.0, 1.0, 0.0, params) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("select_top_k returns everything when fewer than k candidates") {
  auto picked = select_top_k({{3, 1.0}, {1, 2.0}}, 3);
  CHECK(picked == std::vector<PeerId>{1, 3});
}

TEST_CASE("select_top_k keeps the k best by score") {
  auto picked = select_top_k({{0, 1.0}, {1, 2.0}, {2, 0.5}}, 2);
  CHECK(picked == std::vector<PeerId>{1, 0});
}

TEST_CASE("select_top_k breaks score ties by ascending peer id") {
  auto picked = select_top_k({{7, 1.0}, {2, 1.0}}, 1);
  CHECK(picked == std::vector<PeerId>{2});
}

TEST_CASE("scoring properties hold over random inputs") {
  RngStream rng(77, "scoring-prop");
  ScoringParams params;
  for (int i = 0; i < 10000; ++i) {
    const double cpu = rng.uniform(0.1, 8.0);
    const double u = rng.uniform01();
    const double l = load(cpu, u);
    CHECK(l > 0.0);
    CHECK(l <= 1.0);
    // Monotone: more queued work loads harder, more cpu loads lighter.
    CHECK(load(cpu, std::min(1.0, u + 0.1)) >= l);
    if (u < 1.0) CHECK(load(cpu + 1.0, u) < l);

    const double r = rng.uniform(0.0, 2e6);
    const double a = rng.uniform(0.0, 2e6);
    const double s = stability(r, a);
    CHECK(s <= r);
    CHECK(s <= a);

    const double ps = rng.uniform01();
    const double score = pertinence(s, l, ps, params);
    CHECK(score >= 0.0);
    CHECK(score <= params.max_t * (params.load_weight + params.sim_weight) + 1e-12);
    // Monotonicity in each argument.
    CHECK(pertinence(s + 1.0, l, ps, params) >= score - 1e-12);
    CHECK(pertinence(s, l, std::min(1.0, ps + 0.1), params) >= score - 1e-12);
    CHECK(pertinence(s, std::min(1.0, l + 0.1), ps, params) <= score + 1e-12);
    // Clamp: above MaxT the stability factor saturates.
    if (s >= params.max_t) {
      CHECK(score == doctest::Approx(pertinence(params.max_t, l, ps, params))
                         .epsilon(1e-12));
    }
  }
}

TEST_CASE("psim stays within [0,1] for random profiles") {
  RngStream rng(78, "psim-prop");
  for (int i = 0; i < 2000; ++i) {
    NeighborProfile prof;
    const std::size_t n = rng.uniform_index(6);
    for (std::size_t k = 0; k < n; ++k) {
      prof.add(tv({{static_cast<TermId>(rng.uniform_index(10)), rng.uniform(0.1, 3.0)},
                   {static_cast<TermId>(10 + rng.uniform_index(10)), rng.uniform(0.1, 3.0)}}));
    }
    const double v = psim(prof, tv({{static_cast<TermId>(rng.uniform_index(20)), 1.0}}));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("scaling both weights leaves the top-k ranking unchanged") {
  RngStream rng(79, "argmax-prop");
  for (int i = 0; i < 1000; ++i) {
    ScoringParams base;
    ScoringParams scaled = base;
    const double c = rng.uniform(0.1, 20.0);
    scaled.load_weight = base.load_weight * c;
    scaled.sim_weight = base.sim_weight * c;
    std::vector<ScoredPeer> a, b;
    for (PeerId id = 0; id < 6; ++id) {
      const double s = rng.uniform(0.0, 10.0);
      const double l = rng.uniform01();
      const double ps = rng.uniform01();
      a.push_back({id, pertinence(s, l, ps, base)});
      b.push_back({id, pertinence(s, l, ps, scaled)});
    }
    CHECK(select_top_k(a, 3) == select_top_k(b, 3));
  }
}
