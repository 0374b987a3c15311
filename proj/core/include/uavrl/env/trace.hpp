#pragma once

#include <ostream>

#include "uavrl/env/environment.hpp"

namespace uavrl::env {

/// Writes per-slot rollout rows:
/// slot,uav_x,uav_y,scheduled_terminal,snr,bits_delivered,e_tx,e_prop,e_wpt,e_relay,violations
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out);

  /// `slot` is the 1-based index of the slot that produced `outcome`; `uav` is the position after it.
  void write(int slot, Vec2 uav, const StepOutcome& outcome);

 private:
  std::ostream& out_;
};

}  // namespace uavrl::env
