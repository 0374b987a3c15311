#include "uavrl/env/trace.hpp"

#include "uavrl/common/kv_config.hpp"

namespace uavrl::env {

TraceWriter::TraceWriter(std::ostream& out) : out_(out) {
  out_ << "slot,uav_x,uav_y,scheduled_terminal,snr,bits_delivered,e_tx,e_prop,e_wpt,e_relay,violations\n";
}

void TraceWriter::write(int slot, Vec2 uav, const StepOutcome& o) {
  out_ << slot << ',' << format_double(uav.x) << ',' << format_double(uav.y) << ','
       << (o.events.scheduled_terminal ? *o.events.scheduled_terminal : -1) << ','
       << format_double(o.events.snr) << ',' << format_double(o.events.bits_delivered) << ','
       << format_double(o.energy.terminal_tx) << ',' << format_double(o.energy.propulsion) << ','
       << format_double(o.energy.wpt) << ',' << format_double(o.energy.relay) << ','
       << o.violations.to_string() << '\n';
}

}  // namespace uavrl::env
