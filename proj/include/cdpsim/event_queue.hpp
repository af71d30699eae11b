#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <vector>

namespace cdpsim {

enum class EventKind {
  MobilityTick,
  EnergyTick,
  MessageArrival,
  QueueService,
  QueryIssue,
  RunEnd,
};

std::string_view to_string(EventKind kind);

// A scheduled occurrence. (time, seq) totally orders all events; seq is the
// scheduling sequence number, so simultaneous events fire in the order they
// were scheduled rather than in container order.
struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::RunEnd;
  std::function<void()> action;
};

// Deterministic discrete-event core: virtual clock plus ordered event queue.
// Everything else in the simulator is an event handler.
class EventQueue {
 public:
  using DispatchSink = std::function<void(const Event&)>;

  double now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }

  // Called once per dispatched event, before its action runs. Used for
  // event logs and replay comparison.
  void set_dispatch_sink(DispatchSink sink) { sink_ = std::move(sink); }

  // Enqueue an action at virtual time `time`. Throws PastTimeError if the
  // time is already behind the clock. Returns the sequence number handle.
  std::uint64_t schedule(double time, EventKind kind, std::function<void()> action);

  // Dispatch every event with time <= t_end in (time, seq) order, then
  // advance the clock to t_end. Returns the number of events dispatched.
  std::size_t run_until(double t_end);

 private:
  struct Order {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Order> heap_;
  DispatchSink sink_;
};

}  // namespace cdpsim
