#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cdpsim/errors.hpp"
#include "cdpsim/event_queue.hpp"
#include "cdpsim/rng.hpp"

using namespace cdpsim;

TEST_CASE("schedule inserts into the queue") {
  EventQueue q;
  q.schedule(0.0, EventKind::MobilityTick, [] {});
  CHECK(q.pending() == 1);
}

TEST_CASE("events dispatch in time order regardless of scheduling order") {
  EventQueue q;
  std::vector<int> order;
  q.schedule(5.0, EventKind::QueryIssue, [&] { order.push_back(5); });
  q.schedule(3.0, EventKind::QueryIssue, [&] { order.push_back(3); });
  q.run_until(10.0);
  CHECK(order == std::vector<int>{3, 5});
}

TEST_CASE("simultaneous events break ties by scheduling sequence") {
  EventQueue q;
  std::vector<char> order;
  q.schedule(3.0, EventKind::QueryIssue, [&] { order.push_back('A'); });
  q.schedule(3.0, EventKind::QueryIssue, [&] { order.push_back('B'); });
  q.run_until(3.0);
  CHECK(order == std::vector<char>{'A', 'B'});
}

TEST_CASE("scheduling into the past is rejected") {
  EventQueue q;
  q.schedule(2.0, EventKind::QueryIssue, [] {});
  q.run_until(5.0);
  CHECK_THROWS_AS(q.schedule(4.0, EventKind::QueryIssue, [] {}), PastTimeError);
}

TEST_CASE("run_until on an empty queue just advances the clock") {
  EventQueue q;
  CHECK(q.run_until(100.0) == 0);
  CHECK(q.now() == 100.0);
}

TEST_CASE("run_until boundary is inclusive") {
  EventQueue q;
  int fired = 0;
  q.schedule(1.0, EventKind::QueryIssue, [&] { ++fired; });
  q.schedule(2.0, EventKind::QueryIssue, [&] { ++fired; });
  q.schedule(3.0, EventKind::QueryIssue, [&] { ++fired; });
  CHECK(q.run_until(2.0) == 2);
  CHECK(fired == 2);
  CHECK(q.now() == 2.0);
}

TEST_CASE("events scheduled during dispatch fire inside the same run_until") {
  EventQueue q;
  std::vector<double> times;
  q.schedule(1.0, EventKind::QueryIssue, [&] {
    times.push_back(q.now());
    q.schedule(1.5, EventKind::QueryIssue, [&] { times.push_back(q.now()); });
  });
  q.run_until(2.0);
  CHECK(times == std::vector<double>{1.0, 1.5});
}

TEST_CASE("dispatch order matches a sort-based oracle on random schedules") {
  RngStream rng(99, "engine-prop");
  for (int trial = 0; trial < 200; ++trial) {
    EventQueue q;
    const int n = 1 + static_cast<int>(rng.uniform_index(40));
    // (time, insertion index) pairs; times drawn from a tiny grid so ties
    // are common.
    std::vector<std::pair<double, int>> expected;
    std::vector<int> dispatched;
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(rng.uniform_index(8));
      expected.emplace_back(t, i);
      q.schedule(t, EventKind::QueryIssue, [&dispatched, i] { dispatched.push_back(i); });
    }
    std::stable_sort(expected.begin(), expected.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    q.run_until(8.0);
    REQUIRE(dispatched.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(dispatched[i] == expected[i].second);
    }
  }
}

TEST_CASE("clock never decreases") {
  EventQueue q;
  RngStream rng(3, "clock");
  double last_seen = 0.0;
  for (int i = 0; i < 100; ++i) {
    q.schedule(rng.uniform(0.0, 50.0), EventKind::QueryIssue, [&] {
      CHECK(q.now() >= last_seen);
      last_seen = q.now();
    });
  }
  q.run_until(50.0);
  CHECK(q.now() == 50.0);
}

TEST_CASE("identical schedules replay to identical event logs") {
  auto run_once = [](std::uint64_t seed) {
    EventQueue q;
    RngStream rng(seed, "schedule");
    std::string log;
    q.set_dispatch_sink([&log](const Event& ev) {
      log += std::to_string(ev.seq) + ":" + std::to_string(ev.time) + ":" +
             std::string(to_string(ev.kind)) + "\n";
    });
    for (int i = 0; i < 50; ++i) {
      q.schedule(rng.uniform(0.0, 20.0), EventKind::MessageArrival, [] {});
    }
    q.run_until(20.0);
    return log;
  };
  CHECK(run_once(42) == run_once(42));
  CHECK(run_once(42) != run_once(43));
}

TEST_CASE("rng registry returns the same stream object per label") {
  RngRegistry reg(1);
  RngStream& a = reg.stream("mobility");
  const std::uint64_t first = a.next_u64();
  RngStream& b = reg.stream("mobility");
  CHECK(&a == &b);
  // The second lookup must continue the stream, not restart it.
  CHECK(b.next_u64() != first);
}

TEST_CASE("distinct seeds give distinct draws for the same label") {
  RngRegistry r1(1), r2(2);
  CHECK(r1.stream("mobility").next_u64() != r2.stream("mobility").next_u64());
}

TEST_CASE("distinct labels give distinct draws for the same seed") {
  RngRegistry reg(1);
  CHECK(reg.stream("mobility").next_u64() != reg.stream("workload").next_u64());
}

TEST_CASE("equal (seed, label) pairs reproduce the same sequence") {
  RngStream a(9, "x"), b(9, "x");
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("sample_without_replacement returns distinct in-range indices") {
  RngStream rng(5, "sample");
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(10);
    const std::size_t k = rng.uniform_index(n + 3);
    auto picked = rng.sample_without_replacement(n, k);
    CHECK(picked.size() == std::min(n, k));
    std::sort(picked.begin(), picked.end());
    CHECK(std::adjacent_find(picked.begin(), picked.end()) == picked.end());
    for (std::size_t idx : picked) CHECK(idx < n);
  }
}
