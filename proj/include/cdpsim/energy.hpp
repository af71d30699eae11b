#pragma once

namespace cdpsim {

struct EnergyParams {
  double initial_min = 80.0;   // units, uniform initial draw
  double initial_max = 100.0;
  double tx_cost = 0.05;       // units per transmission
  double rx_cost = 0.025;      // units per reception
  double idle_rate = 0.001;    // units per second
  double min_energy = 20.0;    // level Rtime predicts down to
  double shutdown = 5.0;       // at or below this the peer disconnects
  bool drain_enabled = true;
  double rtime_cap = 1e6;      // seconds

  void validate() const;
};

enum class EnergyAction { Tx, Rx, IdleTick };

// Battery of one peer. Energy is non-increasing; once it reaches the
// shutdown level the peer is disconnected for the rest of the run.
struct EnergyState {
  double energy = 100.0;
  bool connected = true;
};

// Apply one action's cost (IdleTick scales idle_rate by dt). Energy is
// floored at 0; crossing the shutdown level disconnects the peer.
// Returns the new energy.
double consume(EnergyState& state, const EnergyParams& params, EnergyAction action,
               double dt = 0.0);

// Predicted seconds until the battery drains to min_energy, extrapolated
// linearly from two samples (t_k, energy_k) and (t_p, energy_p), t_k < t_p.
// Zero observed drain predicts the cap; a battery already at or below
// min_energy predicts 0. Result clamped to [0, cap].
// Throws BadSampleOrderError if t_k >= t_p.
double rtime(double t_k, double energy_k, double t_p, double energy_p,
             double min_energy, double cap = 1e6);

}  // namespace cdpsim
