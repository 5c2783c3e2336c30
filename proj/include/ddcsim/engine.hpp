#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddcsim/comm.hpp"
#include "ddcsim/config.hpp"
#include "ddcsim/fleet.hpp"
#include "ddcsim/plant.hpp"
#include "ddcsim/rng.hpp"

namespace ddcsim {

// Raised when the plant integration diverges; the message reports the time.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One intended-state flip, logged so that runs driven by the same seed can
// be shown to share the stochastic schedule.
struct IntendedFlip {
  std::uint32_t step = 0;
  std::uint16_t device = 0;
  std::uint8_t to_on = 0;
  friend bool operator==(const IntendedFlip&, const IntendedFlip&) = default;
};

// Full record of a run. The series hold one entry per step plus the initial
// sample; column i corresponds to time i*dt. Loads are reconstructed from
// the on-count, which is exact.
struct RunOutput {
  ScenarioConfig config;
  std::vector<double> omega;
  std::vector<double> p_mech;
  std::vector<double> p_reserve;
  std::vector<std::uint16_t> on_count;
  std::vector<std::uint16_t> pending_consuming;
  std::vector<std::uint16_t> pending_saving;
  std::vector<std::uint16_t> pending_ddc;    // pending among basic-DDC devices
  std::vector<std::uint16_t> pending_ceddc;  // pending among CeDDC devices
  std::vector<IntendedFlip> intended_log;
  std::vector<std::uint64_t> rng_positions;  // device streams, then scenario

  std::size_t samples() const { return omega.size(); }
  double time_at(std::size_t i) const { return static_cast<double>(i) * config.dt; }
  double load_at(std::size_t i) const {
    return config.fleet.rated_power * on_count[i];
  }
  double electric_load_at(std::size_t i) const {
    return electric_load(omega[i], load_at(i), config.plant);
  }

  // Index of the first sample included in statistics (t >= t_transient).
  std::size_t post_transient_begin() const;
  // |omega - omega_ref| over the post-transient samples.
  std::vector<double> abs_freq_deviations() const;
  std::span<const double> post_transient_omega() const;
};

// Deterministic step loop: register expiry, intended flips, recovery
// attempts, then one RK4 step of the plant over dt. Device events consume
// exactly two draws per device per step from per-device streams; search
// permutations come from a separate scenario-level stream.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);

  void step();
  void run_to_end();

  int steps_done() const { return steps_done_; }
  double time() const { return static_cast<double>(steps_done_) * config_.dt; }
  const PlantState& plant() const { return plant_; }
  const Fleet& fleet() const { return fleet_; }
  const CommRegistry* registry() const { return registry_.get(); }
  const ScenarioConfig& config() const { return config_; }

  // Finalizes the audit trail and hands the output over.
  RunOutput take_output();

 private:
  void append_sample();

  ScenarioConfig config_;
  PlantState plant_;
  Fleet fleet_;
  std::unique_ptr<CommRegistry> registry_;
  std::vector<CounterRng> device_streams_;
  CounterRng scenario_stream_;
  RunOutput out_;
  int steps_done_ = 0;
  int total_steps_ = 0;
};

RunOutput run(const ScenarioConfig& config);

// Runs several scenarios that share seed, fleet statistics, dt and t_total;
// the per-device draw discipline guarantees identical intended schedules, so
// differences between the outputs are attributable to the policies alone.
std::vector<RunOutput> coupled_run(std::span<const ScenarioConfig> configs);

// Builds the per-device policy/cluster assignment for a validated config.
std::vector<Device> assign_devices(const ScenarioConfig& config);
// Cluster member lists (by device id) for a validated config.
std::vector<std::vector<int>> cluster_partition(const ScenarioConfig& config);

}  // namespace ddcsim
