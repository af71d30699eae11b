#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cdpsim/rng.hpp"

namespace cdpsim {

using Vec2 = Eigen::Vector2d;

struct MobilityParams {
  double area_width = 500.0;   // meters
  double area_height = 500.0;  // meters
  double radio_range = 100.0;  // meters, distance <= range is connected
  double v_nominal = 4.26;     // m/s; per-leg speed drawn in [0.5, 1.5] * v_nominal
  double speed_factor_min = 0.5;
  double speed_factor_max = 1.5;
  double pause_min = 0.0;  // seconds
  double pause_max = 2.0;  // seconds
  bool enabled = true;     // false = peers stay at their initial positions
  double affinity_cap = 1e6;  // seconds

  void validate() const;
};

// Random-waypoint state of one peer. The trajectory is piecewise linear and
// evaluated analytically, so positions are exact at any query time; leg
// transitions consume draws from the peer's own rng stream in time order.
class KinematicState {
 public:
  KinematicState() = default;
  KinematicState(Vec2 initial_position, double start_time);

  // A peer mid-leg: travelling from `origin` toward `waypoint` at `speed`
  // since `start_time`.
  static KinematicState moving_leg(Vec2 origin, Vec2 waypoint, double speed,
                                   double start_time);

  // Advance the leg/pause state machine, drawing new waypoints as needed.
  // Times must be queried non-decreasingly within a run.
  void advance_to(double t, const MobilityParams& p, RngStream& rng);

  Vec2 position_at(double t) const;
  Vec2 velocity_at(double t) const;

  bool moving() const { return moving_; }
  double leg_speed() const { return speed_; }
  const Vec2& waypoint() const { return waypoint_; }
  double pause_until() const { return pause_until_; }

 private:
  Vec2 leg_origin_{0.0, 0.0};
  Vec2 waypoint_{0.0, 0.0};
  double leg_start_ = 0.0;
  double speed_ = 0.0;        // m/s while moving, 0 while paused
  double pause_until_ = 0.0;  // end of current pause
  bool moving_ = false;

  double arrival_time() const;
};

// Uniform initial position inside the area.
Vec2 draw_position(const MobilityParams& p, RngStream& rng);

double euclidean_distance(const Vec2& a, const Vec2& b);

// Exact time until the relative motion crosses the radio range, assuming both
// peers hold their current velocity. Returns the cap when the relative
// velocity is zero (the link never breaks under that assumption).
// Throws NotNeighborsError if the pair is already out of range.
double affinity_oracle(const Vec2& pos_i, const Vec2& vel_i, const Vec2& pos_j,
                       const Vec2& vel_j, double radio_range, double cap);

}  // namespace cdpsim
