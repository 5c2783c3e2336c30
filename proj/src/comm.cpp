#include "ddcsim/comm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddcsim {

CommRegistry::CommRegistry(std::vector<std::vector<int>> clusters,
                           int device_count, double window)
    : clusters_(std::move(clusters)),
      cluster_of_(device_count, -1),
      registers_(device_count),
      active_per_cluster_(clusters_.size(), 0) {
  if (window < 0.0) throw std::invalid_argument("comm window must be >= 0");
  window_ = window;
  for (int c = 0; c < static_cast<int>(clusters_.size()); ++c) {
    for (int id : clusters_[c]) {
      if (id < 0 || id >= device_count)
        throw std::invalid_argument("cluster member out of range");
      if (cluster_of_[id] != -1)
        throw std::invalid_argument("device assigned to two clusters");
      cluster_of_[id] = c;
    }
  }
}

void CommRegistry::activate(int device_id) {
  active_.push_back(device_id);
  ++active_per_cluster_[cluster_of_[device_id]];
}

void CommRegistry::deactivate(int device_id) {
  --active_per_cluster_[cluster_of_[device_id]];
}

void CommRegistry::record_switch(int device_id, SwitchDirection direction,
                                 double now) {
  record_released_power(
      device_id, direction == SwitchDirection::kOn ? -1.0 : +1.0, now);
}

void CommRegistry::record_released_power(int device_id, double released,
                                         double now) {
  PowerReleased& reg = registers_[device_id];
  const bool was_active = reg.amount != 0.0;
  reg.amount = released;
  reg.set_at = now;
  if (!was_active && released != 0.0) activate(device_id);
  if (was_active && released == 0.0) deactivate(device_id);
}

void CommRegistry::expire(double now) {
  std::size_t kept = 0;
  for (int id : active_) {
    PowerReleased& reg = registers_[id];
    if (reg.amount == 0.0) continue;  // consumed since the last sweep
    if (now - reg.set_at > window_) {
      reg.amount = 0.0;
      deactivate(id);
      continue;
    }
    active_[kept++] = id;
  }
  active_.resize(kept);
}

std::optional<int> CommRegistry::find_and_consume_power(
    double needed, int searcher_id, double now,
    std::span<const int> search_order) {
  if (needed == 0.0) return std::nullopt;
  for (int id : search_order) {
    if (id == searcher_id) continue;
    PowerReleased& reg = registers_[id];
    if (reg.amount == 0.0) continue;
    if (!(reg.set_at < now)) continue;  // same-step switches are not yet adverts
    if (std::signbit(reg.amount) != std::signbit(needed)) continue;
    if (std::abs(reg.amount) < std::abs(needed)) continue;
    reg.amount -= needed;
    if (reg.amount == 0.0) deactivate(id);
    return id;
  }
  return std::nullopt;
}

std::optional<int> CommRegistry::find_and_consume(
    int cluster_id, SwitchDirection desired, int searcher_id, double now,
    std::span<const int> search_order) {
  // Switching on needs power previously released (+1); off the opposite.
  const double needed = desired == SwitchDirection::kOn ? +1.0 : -1.0;
  (void)cluster_id;
  return find_and_consume_power(needed, searcher_id, now, search_order);
}

std::optional<int> CommRegistry::find_and_consume(int cluster_id,
                                                  SwitchDirection desired,
                                                  int searcher_id, double now,
                                                  CounterRng& order_rng) {
  const std::vector<int>& members = clusters_[cluster_id];
  if (members.size() < 2) return std::nullopt;   // nobody else to ask
  if (active_per_cluster_[cluster_id] == 0) return std::nullopt;
  scratch_order_.assign(members.begin(), members.end());
  shuffle(scratch_order_, order_rng);
  return find_and_consume(cluster_id, desired, searcher_id, now,
                          scratch_order_);
}

}  // namespace ddcsim
