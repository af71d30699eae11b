#include "cdpsim/mobility.hpp"

#include <cmath>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void MobilityParams::validate() const {
  if (area_width <= 0.0 || area_height <= 0.0) {
    throw BadConfigError("mobility.area dimensions must be > 0");
  }
  if (radio_range <= 0.0) throw BadConfigError("mobility.radio_range must be > 0");
  if (v_nominal < 0.0) throw BadConfigError("mobility.v_nominal must be >= 0");
  if (pause_min < 0.0 || pause_max < pause_min) {
    throw BadConfigError("mobility.pause window must satisfy 0 <= min <= max");
  }
  if (speed_factor_min <= 0.0 || speed_factor_max < speed_factor_min) {
    throw BadConfigError("mobility.speed factors must satisfy 0 < min <= max");
  }
  if (affinity_cap <= 0.0) throw BadConfigError("mobility.affinity_cap must be > 0");
}

KinematicState::KinematicState(Vec2 initial_position, double start_time)
    : leg_origin_(initial_position),
      waypoint_(initial_position),
      leg_start_(start_time),
      pause_until_(start_time),
      moving_(false) {}

KinematicState KinematicState::moving_leg(Vec2 origin, Vec2 waypoint, double speed,
                                          double start_time) {
  KinematicState k(origin, start_time);
  k.waypoint_ = waypoint;
  k.speed_ = speed;
  k.leg_start_ = start_time;
  k.moving_ = speed > 0.0 && (waypoint - origin).norm() > 0.0;
  return k;
}

double KinematicState::arrival_time() const {
  const double dist = (waypoint_ - leg_origin_).norm();
  return leg_start_ + (speed_ > 0.0 ? dist / speed_ : 0.0);
}

void KinematicState::advance_to(double t, const MobilityParams& p, RngStream& rng) {
  if (!p.enabled || p.v_nominal <= 0.0) return;
  for (;;) {
    if (moving_) {
      const double t_arr = arrival_time();
      if (t < t_arr) return;
      leg_origin_ = waypoint_;
      leg_start_ = t_arr;
      speed_ = 0.0;
      moving_ = false;
      pause_until_ = t_arr + rng.uniform(p.pause_min, p.pause_max);
    } else {
      if (t < pause_until_) return;
      const Vec2 here = waypoint_;  // rest position while paused
      waypoint_ = draw_position(p, rng);
      speed_ = p.v_nominal * rng.uniform(p.speed_factor_min, p.speed_factor_max);
      leg_origin_ = here;
      leg_start_ = pause_until_;
      moving_ = true;
    }
  }
}

Vec2 KinematicState::position_at(double t) const {
  if (!moving_) return waypoint_;
  const Vec2 delta = waypoint_ - leg_origin_;
  const double dist = delta.norm();
  if (dist == 0.0) return waypoint_;
  const double travelled = std::min(dist, speed_ * (t - leg_start_));
  return leg_origin_ + delta * (travelled / dist);
}

Vec2 KinematicState::velocity_at(double t) const {
  if (!moving_ || t < leg_start_) return Vec2::Zero();
  const Vec2 delta = waypoint_ - leg_origin_;
  const double dist = delta.norm();
  if (dist == 0.0 || t > arrival_time()) return Vec2::Zero();
  return delta * (speed_ / dist);
}

Vec2 draw_position(const MobilityParams& p, RngStream& rng) {
  const double x = rng.uniform(0.0, p.area_width);
  const double y = rng.uniform(0.0, p.area_height);
  return {x, y};
}

double euclidean_distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

double affinity_oracle(const Vec2& pos_i, const Vec2& vel_i, const Vec2& pos_j,
                       const Vec2& vel_j, double radio_range, double cap) {
  const Vec2 dp = pos_j - pos_i;
  if (dp.norm() > radio_range) {
    throw NotNeighborsError("affinity_oracle: pair out of radio range");
  }
  const Vec2 dv = vel_j - vel_i;
  const double a = dv.squaredNorm();
  if (a < 1e-18) return cap;  // identical velocities: never separates
  const double b = 2.0 * dp.dot(dv);
  const double c = dp.squaredNorm() - radio_range * radio_range;
  // c <= 0 inside range, so the + root is the (unique) future crossing.
  const double disc = b * b - 4.0 * a * c;
  const double tau = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
  if (tau < 0.0) return 0.0;
  return std::min(tau, cap);
}

}  // namespace cdpsim
