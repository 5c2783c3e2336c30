#pragma once

#include <optional>

namespace ddcsim {

// Aggregate power-plant parameters. Powers are expressed in units of the
// appliance rated power P0 throughout; frequency is in Hz.
struct PlantParams {
  double omega_ref = 50.0;         // reference frequency [Hz]
  double inertia = 2.26;           // inertia constant H [s]
  double governor_tau = 0.78;      // governor time constant tau_g [s]
  double droop = 0.07;             // primary droop coefficient R
  double secondary_gain = 50.0;    // integral gain K [P0/s]
  double capacity = 500.0;         // nominal capacity P_G [P0]
  double freq_sensitivity = 0.026; // frequency-sensitive load fraction D
};

struct PlantState {
  double omega = 50.0;     // grid frequency [Hz]
  double p_mech = 0.0;     // generated mechanical power [P0]
  double p_reserve = 0.0;  // spinning-reserve setpoint [P0]
};

struct PlantDerivatives {
  double d_omega = 0.0;
  double d_p_mech = 0.0;
  double d_p_reserve = 0.0;
};

// Total electric load seen by the generator: the frequency-insensitive load
// `base_load` corrected by the frequency-sensitive fraction D.
double electric_load(double omega, double base_load, const PlantParams& params);

// Right-hand sides of the swing equation with primary (droop) and secondary
// (integral) control, for the frequency-insensitive load `base_load`.
PlantDerivatives plant_derivatives(const PlantState& state, double base_load,
                                   const PlantParams& params);

// Classical fixed-step RK4 advance. `base_load` is held constant over the
// step; the load's frequency correction is re-evaluated at every stage.
// Returns nullopt if the step produces a non-finite or non-positive
// frequency (integration failure).
std::optional<PlantState> rk4_step(const PlantState& state, double base_load,
                                   const PlantParams& params, double dt);

// Fixed point of the plant equations for constant load: omega at reference,
// mechanical power and reserve setpoint balancing the load exactly.
PlantState equilibrium_state(double base_load, const PlantParams& params);

}  // namespace ddcsim
