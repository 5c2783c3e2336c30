#pragma once

#include <cstdint>
#include <vector>

#include "ddcsim/comm.hpp"
#include "ddcsim/rng.hpp"

namespace ddcsim {

enum class Policy : std::uint8_t { kUncontrolled, kDdc, kCeddc };

// A deferred switch: consuming if a switch-on waits, saving if a switch-off
// waits.
enum class TaskKind : std::uint8_t { kConsuming, kSaving };

struct FleetParams {
  int count = 1000;           // N
  double rate_on = 6.55e-4;   // off -> on intent rate p [1/s]
  double rate_off = 6.55e-4;  // on -> off intent rate q [1/s]
  double rated_power = 1.0;   // P0 (powers are normalized to it)
};

struct DdcParams {
  double epsilon = 0.05;    // switching threshold [Hz]
  double epsilon1 = 0.06;   // recovery threshold [Hz]
  double gamma = 1.2e-3;    // recovery attempt rate [1/s]
};

// One appliance. The pending task is not stored: a device holds exactly one
// pending task iff actual differs from intended, consuming iff it intends to
// be on.
struct Device {
  bool actual_on = false;
  bool intended_on = false;
  Policy policy = Policy::kUncontrolled;
  std::int32_t cluster = -1;  // CeDDC cluster id, -1 otherwise
};

// Switch-on permitted while the frequency has not sagged below the band;
// switch-off permitted while it has not risen above it. Strict comparisons,
// so boundary equality blocks.
inline bool ddc_gate(SwitchDirection direction, double omega,
                     const DdcParams& params, double omega_ref) {
  if (direction == SwitchDirection::kOn)
    return omega > omega_ref - params.epsilon;
  return omega < omega_ref + params.epsilon;
}

// Pending tasks recover only once the frequency has crossed the outer band
// on the side where the recovery helps the grid.
inline bool recovery_gate(TaskKind task, double omega, const DdcParams& params,
                          double omega_ref) {
  if (task == TaskKind::kConsuming)
    return omega > omega_ref + params.epsilon1;
  return omega < omega_ref - params.epsilon1;
}

struct PendingCounts {
  int consuming = 0;
  int saving = 0;
  int total() const { return consuming + saving; }
};

// Communication context handed to the fleet by the step loop. `now` is the
// time of the current step; `order_rng` is the scenario-level stream used
// for search permutations.
struct CommLink {
  CommRegistry* registry = nullptr;
  CounterRng* order_rng = nullptr;
  double now = 0.0;
};

// The appliance population. All mutation goes through the per-device
// operations below; on/pending tallies are maintained incrementally so the
// step loop never rescans the fleet.
class Fleet {
 public:
  Fleet(const FleetParams& params, const DdcParams& ddc, double omega_ref,
        std::vector<Device> devices);

  int size() const { return static_cast<int>(devices_.size()); }
  const Device& device(int id) const { return devices_[id]; }
  const FleetParams& params() const { return params_; }

  // Advances the intended state of one device by one step: an off device
  // intends to switch on with probability p*dt, an on device to switch off
  // with probability q*dt. The caller supplies the uniform draw; exactly one
  // draw is consumed per device per step whether or not a flip happens.
  bool sample_intended_flip(int id, double dt, double draw) {
    Device& d = devices_[id];
    const double rate = d.intended_on ? params_.rate_off : params_.rate_on;
    if (draw >= rate * dt) return false;
    set_intended(id, !d.intended_on);
    return true;
  }

  // Resolves a just-flipped intention against the DDC gate. Uncontrolled
  // devices always follow the intention. A blocked CeDDC device may still
  // switch by consuming a matching advert in its cluster. Returns whether an
  // actual switch happened.
  bool apply_intended_flip(int id, double omega, const CommLink* comm);

  // Fires a recovery attempt with probability gamma*dt; on firing, the
  // pending switch is executed if the recovery gate allows it or (CeDDC) a
  // register match is found. One draw per device per step, unconditionally.
  bool attempt_recovery(int id, double omega, double dt, double draw,
                        const CommLink* comm) {
    Device& d = devices_[id];
    if (d.actual_on == d.intended_on) return false;  // no pending task
    if (draw >= ddc_.gamma * dt) return false;       // attempt did not fire
    return recover_pending(id, omega, comm);
  }

  double total_load() const { return params_.rated_power * on_count_; }
  int on_count() const { return on_count_; }
  PendingCounts pending_counts() const { return pending_; }
  int pending_of_policy(Policy p) const {
    return pending_by_policy_[static_cast<int>(p)];
  }

 private:
  bool recover_pending(int id, double omega, const CommLink* comm);
  bool try_consume_match(int id, SwitchDirection dir, const CommLink* comm);
  void set_intended(int id, bool on);
  void set_actual(int id, bool on, const CommLink* comm);
  void account(const Device& d, int delta);

  FleetParams params_;
  DdcParams ddc_;
  double omega_ref_;
  std::vector<Device> devices_;
  int on_count_ = 0;
  PendingCounts pending_;
  int pending_by_policy_[3] = {0, 0, 0};
};

}  // namespace ddcsim
