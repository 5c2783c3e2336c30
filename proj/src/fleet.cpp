#include "ddcsim/fleet.hpp"

#include <stdexcept>

namespace ddcsim {

Fleet::Fleet(const FleetParams& params, const DdcParams& ddc, double omega_ref,
             std::vector<Device> devices)
    : params_(params), ddc_(ddc), omega_ref_(omega_ref),
      devices_(std::move(devices)) {
  if (static_cast<int>(devices_.size()) != params_.count)
    throw std::invalid_argument("device list does not match fleet count");
  for (const Device& d : devices_) {
    if (d.actual_on) ++on_count_;
    account(d, +1);
  }
}

// Adds (delta=+1) or removes (delta=-1) a device's pending task from the
// tallies, based on its current actual/intended pair.
void Fleet::account(const Device& d, int delta) {
  if (d.actual_on == d.intended_on) return;
  if (d.intended_on)
    pending_.consuming += delta;
  else
    pending_.saving += delta;
  pending_by_policy_[static_cast<int>(d.policy)] += delta;
}

void Fleet::set_intended(int id, bool on) {
  Device& d = devices_[id];
  account(d, -1);
  d.intended_on = on;
  account(d, +1);
}

void Fleet::set_actual(int id, bool on, const CommLink* comm) {
  Device& d = devices_[id];
  account(d, -1);
  d.actual_on = on;
  account(d, +1);
  on_count_ += on ? +1 : -1;
  if (d.policy == Policy::kCeddc && comm && comm->registry) {
    comm->registry->record_switch(
        id, on ? SwitchDirection::kOn : SwitchDirection::kOff, comm->now);
  }
}

bool Fleet::try_consume_match(int id, SwitchDirection dir,
                              const CommLink* comm) {
  const Device& d = devices_[id];
  if (d.policy != Policy::kCeddc || !comm || !comm->registry) return false;
  return comm->registry
      ->find_and_consume(d.cluster, dir, id, comm->now, *comm->order_rng)
      .has_value();
}

bool Fleet::apply_intended_flip(int id, double omega, const CommLink* comm) {
  Device& d = devices_[id];
  if (d.policy == Policy::kUncontrolled) {
    set_actual(id, d.intended_on, comm);
    return true;
  }
  // The flip may have restored intended == actual, annihilating the pending
  // task that was waiting for the opposite switch. Nothing to do then.
  if (d.actual_on == d.intended_on) return false;
  const SwitchDirection dir =
      d.intended_on ? SwitchDirection::kOn : SwitchDirection::kOff;
  if (ddc_gate(dir, omega, ddc_, omega_ref_) ||
      try_consume_match(id, dir, comm)) {
    set_actual(id, d.intended_on, comm);
    return true;
  }
  return false;  // deferred: the mismatch stands as a pending task
}

bool Fleet::recover_pending(int id, double omega, const CommLink* comm) {
  Device& d = devices_[id];
  const TaskKind task = d.intended_on ? TaskKind::kConsuming : TaskKind::kSaving;
  const SwitchDirection dir =
      d.intended_on ? SwitchDirection::kOn : SwitchDirection::kOff;
  if (recovery_gate(task, omega, ddc_, omega_ref_) ||
      try_consume_match(id, dir, comm)) {
    set_actual(id, d.intended_on, comm);
    return true;
  }
  return false;
}

}  // namespace ddcsim
