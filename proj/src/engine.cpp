#include "ddcsim/engine.hpp"

#include <cmath>
#include <sstream>

namespace ddcsim {

std::size_t RunOutput::post_transient_begin() const {
  const double idx = std::ceil(config.t_transient / config.dt - 1e-9);
  return static_cast<std::size_t>(idx < 0.0 ? 0.0 : idx);
}

std::vector<double> RunOutput::abs_freq_deviations() const {
  std::vector<double> out;
  const std::size_t begin = post_transient_begin();
  out.reserve(omega.size() - begin);
  for (std::size_t i = begin; i < omega.size(); ++i)
    out.push_back(std::abs(omega[i] - config.plant.omega_ref));
  return out;
}

std::span<const double> RunOutput::post_transient_omega() const {
  const std::size_t begin = post_transient_begin();
  return {omega.data() + begin, omega.size() - begin};
}

std::vector<Device> assign_devices(const ScenarioConfig& config) {
  std::vector<Device> devices(config.fleet.count);
  int id = 0;
  for (int i = 0; i < config.policy.uncontrolled; ++i)
    devices[id++].policy = Policy::kUncontrolled;
  for (int i = 0; i < config.policy.ddc; ++i)
    devices[id++].policy = Policy::kDdc;
  int cluster = 0;
  for (int size : config.comm.cluster_sizes) {
    for (int i = 0; i < size; ++i) {
      devices[id].policy = Policy::kCeddc;
      devices[id].cluster = cluster;
      ++id;
    }
    ++cluster;
  }
  return devices;
}

std::vector<std::vector<int>> cluster_partition(const ScenarioConfig& config) {
  std::vector<std::vector<int>> clusters;
  int id = config.policy.uncontrolled + config.policy.ddc;
  for (int size : config.comm.cluster_sizes) {
    std::vector<int> members(size);
    for (int i = 0; i < size; ++i) members[i] = id++;
    clusters.push_back(std::move(members));
  }
  return clusters;
}

namespace {

Fleet make_fleet(const ScenarioConfig& config, std::uint64_t seed) {
  std::vector<Device> devices = assign_devices(config);
  // Stationary start: each device independently on with probability
  // p/(p+q), intended and actual in agreement. Draw 0 of each device stream.
  const double p_on = config.fleet.rate_on /
                      (config.fleet.rate_on + config.fleet.rate_off);
  for (int id = 0; id < config.fleet.count; ++id) {
    CounterRng stream(seed, static_cast<std::uint64_t>(id));
    const bool on = stream.next_double() < p_on;
    devices[id].intended_on = on;
    devices[id].actual_on = on;
  }
  return Fleet(config.fleet, config.ddc, config.plant.omega_ref,
               std::move(devices));
}

}  // namespace

Simulation::Simulation(ScenarioConfig config)
    : config_((config.normalize_and_validate(), std::move(config))),
      fleet_(make_fleet(config_, config_.seed)),
      scenario_stream_(config_.seed,
                       static_cast<std::uint64_t>(config_.fleet.count) + 1) {
  total_steps_ = config_.step_count();
  if (config_.comm.enabled) {
    registry_ = std::make_unique<CommRegistry>(
        cluster_partition(config_), config_.fleet.count, config_.comm.window);
  }
  device_streams_.reserve(config_.fleet.count);
  for (int id = 0; id < config_.fleet.count; ++id) {
    CounterRng stream(config_.seed, static_cast<std::uint64_t>(id));
    stream.next_double();  // the initial-state draw consumed by make_fleet
    device_streams_.push_back(stream);
  }
  plant_ = equilibrium_state(fleet_.total_load(), config_.plant);

  const std::size_t n = static_cast<std::size_t>(total_steps_) + 1;
  out_.config = config_;
  out_.omega.reserve(n);
  out_.p_mech.reserve(n);
  out_.p_reserve.reserve(n);
  out_.on_count.reserve(n);
  out_.pending_consuming.reserve(n);
  out_.pending_saving.reserve(n);
  out_.pending_ddc.reserve(n);
  out_.pending_ceddc.reserve(n);
  append_sample();
}

void Simulation::append_sample() {
  out_.omega.push_back(plant_.omega);
  out_.p_mech.push_back(plant_.p_mech);
  out_.p_reserve.push_back(plant_.p_reserve);
  out_.on_count.push_back(static_cast<std::uint16_t>(fleet_.on_count()));
  const PendingCounts pending = fleet_.pending_counts();
  out_.pending_consuming.push_back(static_cast<std::uint16_t>(pending.consuming));
  out_.pending_saving.push_back(static_cast<std::uint16_t>(pending.saving));
  out_.pending_ddc.push_back(
      static_cast<std::uint16_t>(fleet_.pending_of_policy(Policy::kDdc)));
  out_.pending_ceddc.push_back(
      static_cast<std::uint16_t>(fleet_.pending_of_policy(Policy::kCeddc)));
}

void Simulation::step() {
  const double now = time();
  const double omega = plant_.omega;
  const double dt = config_.dt;
  const int n = fleet_.size();

  CommLink link{registry_.get(), &scenario_stream_, now};
  const CommLink* comm = registry_ ? &link : nullptr;
  if (registry_) registry_->expire(now);

  for (int id = 0; id < n; ++id) {
    const double draw = device_streams_[id].next_double();
    if (fleet_.sample_intended_flip(id, dt, draw)) {
      out_.intended_log.push_back(
          {static_cast<std::uint32_t>(steps_done_),
           static_cast<std::uint16_t>(id),
           static_cast<std::uint8_t>(fleet_.device(id).intended_on)});
      fleet_.apply_intended_flip(id, omega, comm);
    }
  }
  for (int id = 0; id < n; ++id) {
    const double draw = device_streams_[id].next_double();
    fleet_.attempt_recovery(id, omega, dt, draw, comm);
  }

  const auto next = rk4_step(plant_, fleet_.total_load(), config_.plant, dt);
  if (!next) {
    std::ostringstream msg;
    msg << "integration failure at t=" << (now + dt) << " s";
    throw SimulationError(msg.str());
  }
  plant_ = *next;
  ++steps_done_;
  append_sample();
}

void Simulation::run_to_end() {
  while (steps_done_ < total_steps_) step();
}

RunOutput Simulation::take_output() {
  out_.rng_positions.clear();
  out_.rng_positions.reserve(device_streams_.size() + 1);
  for (const CounterRng& s : device_streams_)
    out_.rng_positions.push_back(s.position());
  out_.rng_positions.push_back(scenario_stream_.position());
  return std::move(out_);
}

RunOutput run(const ScenarioConfig& config) {
  Simulation sim(config);
  sim.run_to_end();
  return sim.take_output();
}

std::vector<RunOutput> coupled_run(std::span<const ScenarioConfig> configs) {
  if (configs.empty()) return {};
  const ScenarioConfig& base = configs.front();
  for (const ScenarioConfig& c : configs) {
    const bool shared = c.seed == base.seed &&
                        c.fleet.count == base.fleet.count &&
                        c.fleet.rate_on == base.fleet.rate_on &&
                        c.fleet.rate_off == base.fleet.rate_off &&
                        c.dt == base.dt && c.t_total == base.t_total;
    if (!shared)
      throw ConfigError(
          "coupled_run: scenarios must share seed, N, p, q, dt and t_total");
  }
  std::vector<RunOutput> outputs;
  outputs.reserve(configs.size());
  for (const ScenarioConfig& c : configs) outputs.push_back(run(c));
  return outputs;
}

}  // namespace ddcsim
