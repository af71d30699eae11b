#include "cdpsim/energy.hpp"

#include <algorithm>

#include "cdpsim/errors.hpp"

namespace cdpsim {

void EnergyParams::validate() const {
  if (initial_min < 0.0 || initial_max < initial_min) {
    throw BadConfigError("energy.initial window must satisfy 0 <= min <= max");
  }
  if (tx_cost < 0.0 || rx_cost < 0.0 || idle_rate < 0.0) {
    throw BadConfigError("energy costs must be >= 0");
  }
  if (shutdown < 0.0) throw BadConfigError("energy.shutdown must be >= 0");
  if (min_energy < shutdown) {
    throw BadConfigError("energy.min_energy must be >= energy.shutdown");
  }
  if (rtime_cap <= 0.0) throw BadConfigError("energy.rtime_cap must be > 0");
}

double consume(EnergyState& state, const EnergyParams& params, EnergyAction action,
               double dt) {
  if (!params.drain_enabled || !state.connected) return state.energy;
  double cost = 0.0;
  switch (action) {
    case EnergyAction::Tx: cost = params.tx_cost; break;
    case EnergyAction::Rx: cost = params.rx_cost; break;
    case EnergyAction::IdleTick: cost = params.idle_rate * dt; break;
  }
  state.energy = std::max(0.0, state.energy - cost);
  if (state.energy <= params.shutdown) state.connected = false;
  return state.energy;
}

double rtime(double t_k, double energy_k, double t_p, double energy_p,
             double min_energy, double cap) {
  if (t_k >= t_p) {
    throw BadSampleOrderError("rtime: samples must satisfy t_k < t_p");
  }
  if (energy_p <= min_energy) return 0.0;
  const double drain = energy_k - energy_p;
  if (drain <= 0.0) return cap;
  const double value = (energy_p - min_energy) * (t_p - t_k) / drain;
  return std::clamp(value, 0.0, cap);
}

}  // namespace cdpsim
