#include "ddcsim/plant.hpp"

#include <cmath>

namespace ddcsim {

double electric_load(double omega, double base_load, const PlantParams& params) {
  const double rel_dev = (omega - params.omega_ref) / params.omega_ref;
  return (1.0 + params.freq_sensitivity * rel_dev) * base_load;
}

PlantDerivatives plant_derivatives(const PlantState& state, double base_load,
                                   const PlantParams& params) {
  const double p_elec = electric_load(state.omega, base_load, params);
  const double freq_dev = state.omega - params.omega_ref;
  PlantDerivatives d;
  d.d_omega = state.omega / (2.0 * params.inertia * params.capacity) *
              (state.p_mech - p_elec);
  d.d_p_mech = (state.p_reserve - state.p_mech -
                params.capacity / (params.droop * params.omega_ref) * freq_dev) /
               params.governor_tau;
  d.d_p_reserve = -params.secondary_gain / params.omega_ref * freq_dev;
  return d;
}

namespace {

PlantState advanced(const PlantState& s, const PlantDerivatives& k, double h) {
  return {s.omega + h * k.d_omega, s.p_mech + h * k.d_p_mech,
          s.p_reserve + h * k.d_p_reserve};
}

}  // namespace

std::optional<PlantState> rk4_step(const PlantState& state, double base_load,
                                   const PlantParams& params, double dt) {
  const PlantDerivatives k1 = plant_derivatives(state, base_load, params);
  const PlantDerivatives k2 =
      plant_derivatives(advanced(state, k1, dt / 2.0), base_load, params);
  const PlantDerivatives k3 =
      plant_derivatives(advanced(state, k2, dt / 2.0), base_load, params);
  const PlantDerivatives k4 =
      plant_derivatives(advanced(state, k3, dt), base_load, params);

  const double w = dt / 6.0;
  PlantState next;
  next.omega =
      state.omega + w * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega +
                         k4.d_omega);
  next.p_mech =
      state.p_mech + w * (k1.d_p_mech + 2.0 * k2.d_p_mech + 2.0 * k3.d_p_mech +
                          k4.d_p_mech);
  next.p_reserve = state.p_reserve +
                   w * (k1.d_p_reserve + 2.0 * k2.d_p_reserve +
                        2.0 * k3.d_p_reserve + k4.d_p_reserve);

  if (!std::isfinite(next.omega) || !std::isfinite(next.p_mech) ||
      !std::isfinite(next.p_reserve) || next.omega <= 0.0) {
    return std::nullopt;
  }
  return next;
}

PlantState equilibrium_state(double base_load, const PlantParams& params) {
  return {params.omega_ref, base_load, base_load};
}

}  // namespace ddcsim
