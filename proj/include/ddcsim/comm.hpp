#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ddcsim/rng.hpp"

namespace ddcsim {

enum class SwitchDirection : std::uint8_t { kOn, kOff };

// Power-released register of one device: a signed amount in units of P0
// (+1/-1 in the base protocol, arbitrary in the variable-power variant) plus
// the time it was set. A zero amount means no slot on offer.
struct PowerReleased {
  double amount = 0.0;
  double set_at = 0.0;
};

// Cluster-local register board. Devices advertise completed switches here;
// a blocked device may consume a matching advert from another device in its
// own cluster. Only switches from strictly earlier steps are consumable, so
// a zero time window degenerates to no communication at all.
class CommRegistry {
 public:
  CommRegistry(std::vector<std::vector<int>> clusters, int device_count,
               double window);

  double window() const { return window_; }
  int cluster_of(int device_id) const { return cluster_of_[device_id]; }
  const std::vector<int>& cluster_members(int cluster_id) const {
    return clusters_[cluster_id];
  }
  int cluster_count() const { return static_cast<int>(clusters_.size()); }
  const PowerReleased& register_of(int device_id) const {
    return registers_[device_id];
  }

  // Records an actual switch: switching on releases -1, switching off +1.
  // Overwrites whatever the device advertised before.
  void record_switch(int device_id, SwitchDirection direction, double now);

  // Variable-power variant of record_switch: `released` is positive when the
  // device switched off and negative when it switched on.
  void record_released_power(int device_id, double released, double now);

  // Zeroes every register older than the window. Must run at the start of
  // each step, before any register is read.
  void expire(double now);

  // Searches `search_order` for a device other than the searcher whose
  // register can cover `needed` (same sign, at least the magnitude) and was
  // set before `now`. Consumes the matched amount and returns the provider,
  // or nullopt if no device in the order qualifies.
  std::optional<int> find_and_consume_power(double needed, int searcher_id,
                                            double now,
                                            std::span<const int> search_order);

  // Base three-valued protocol: a device that wants to switch on consumes a
  // +1 advert, a device that wants to switch off consumes a -1 advert.
  std::optional<int> find_and_consume(int cluster_id, SwitchDirection desired,
                                      int searcher_id, double now,
                                      std::span<const int> search_order);

  // Same, with the search order drawn as a fresh random permutation of the
  // searcher's cluster from `order_rng`.
  std::optional<int> find_and_consume(int cluster_id, SwitchDirection desired,
                                      int searcher_id, double now,
                                      CounterRng& order_rng);

 private:
  double window_ = 0.0;
  std::vector<std::vector<int>> clusters_;
  std::vector<int> cluster_of_;          // -1 for devices outside any cluster
  std::vector<PowerReleased> registers_;
  std::vector<int> active_;              // ids with a nonzero register
  std::vector<int> active_per_cluster_;
  std::vector<int> scratch_order_;

  void activate(int device_id);
  void deactivate(int device_id);
};

}  // namespace ddcsim
