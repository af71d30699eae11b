#pragma once

#include <cstddef>
#include <deque>
#include <utility>

namespace cdpsim {

// Ring of timestamped distance samples for one neighbor, fed by beacons.
// Sample times strictly increase; records at or before the latest sample
// time are ignored.
class AffinityWindow {
 public:
  explicit AffinityWindow(std::size_t capacity = 8) : capacity_(capacity) {}

  void record(double t, double distance);
  std::size_t size() const { return samples_.size(); }
  const std::deque<std::pair<double, double>>& samples() const { return samples_; }

  // Linear extrapolation of the distance slope over the two most recent
  // samples: a non-positive slope (holding or approaching) predicts the cap,
  // otherwise (range - d_latest) / slope, clamped to [0, cap].
  // Throws InsufficientSamplesError with fewer than 2 samples.
  double estimate(double radio_range, double cap) const;

 private:
  std::size_t capacity_;
  std::deque<std::pair<double, double>> samples_;  // (time, distance)
};

}  // namespace cdpsim
