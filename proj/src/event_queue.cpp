#include "cdpsim/event_queue.hpp"

#include <utility>

#include "cdpsim/errors.hpp"

namespace cdpsim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::MobilityTick: return "MobilityTick";
    case EventKind::EnergyTick: return "EnergyTick";
    case EventKind::MessageArrival: return "MessageArrival";
    case EventKind::QueueService: return "QueueService";
    case EventKind::QueryIssue: return "QueryIssue";
    case EventKind::RunEnd: return "RunEnd";
  }
  return "Unknown";
}

std::uint64_t EventQueue::schedule(double time, EventKind kind,
                                   std::function<void()> action) {
  if (time < now_) {
    throw PastTimeError("schedule: event time " + std::to_string(time) +
                        " precedes clock " + std::to_string(now_));
  }
  Event ev;
  ev.time = time;
  ev.seq = next_seq_++;
  ev.kind = kind;
  ev.action = std::move(action);
  const std::uint64_t handle = ev.seq;
  heap_.push(std::move(ev));
  return handle;
}

std::size_t EventQueue::run_until(double t_end) {
  if (t_end < now_) {
    throw PastTimeError("run_until: t_end precedes clock");
  }
  std::size_t dispatched = 0;
  while (!heap_.empty() && heap_.top().time <= t_end) {
    Event ev = heap_.top();
    heap_.pop();
    now_ = ev.time;
    if (sink_) sink_(ev);
    if (ev.action) ev.action();
    ++dispatched;
  }
  now_ = t_end;
  return dispatched;
}

}  // namespace cdpsim
