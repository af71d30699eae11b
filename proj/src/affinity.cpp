#include "cdpsim/affinity.hpp"

#include <algorithm>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void AffinityWindow::record(double t, double distance) {
  if (!samples_.empty() && t <= samples_.back().first) return;
  if (samples_.size() == capacity_) samples_.pop_front();
  samples_.emplace_back(t, distance);
}

double AffinityWindow::estimate(double radio_range, double cap) const {
  if (samples_.size() < 2) {
    throw InsufficientSamplesError("affinity estimate needs >= 2 samples");
  }
  const auto& [t1, d1] = samples_[samples_.size() - 2];
  const auto& [t2, d2] = samples_[samples_.size() - 1];
  const double slope = (d2 - d1) / (t2 - t1);
  if (slope <= 0.0) return cap;
  return std::clamp((radio_range - d2) / slope, 0.0, cap);
}

}  // namespace cdpsim
