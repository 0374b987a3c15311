#include "uavrl/reward/prompt.hpp"

#include <sstream>
#include <stdexcept>

#include "uavrl/common/kv_config.hpp"
#include "uavrl/reward/factors.hpp"

namespace uavrl::reward {

WorldDescriptor describe_world(const env::WorldConfig& c) {
  std::ostringstream s;
  s << "A rotary-wing UAV flies at a fixed altitude of " << format_double(c.uav_altitude)
    << " m and constant speed of " << format_double(c.uav_speed) << " m/s over a " << format_double(c.area_side)
    << " m x " << format_double(c.area_side) << " m sea area with " << c.n_terminals
    << " battery-free IoT terminals at fixed random positions. Time is divided into slots of "
    << format_double(c.slot_duration) << " s; an episode lasts at most " << c.horizon
    << " slots and ends early once every terminal has delivered its packet of " << format_double(c.packet_size)
    << " bits.\n"
    << "In every slot the UAV either moves one step in a chosen direction or hovers. It broadcasts wireless power ("
    << format_double(c.p_wpt) << " W) to all terminals that still hold data; terminals harvest with efficiency "
    << format_double(c.harvest_efficiency)
    << " over Rician-fading channels. The pending terminal with the best channel and enough stored energy uploads "
       "data to the UAV, which relays it to a marine base station at "
    << format_double(c.p_relay) << " W.\n"
    << "Total system energy per slot is terminal transmission energy plus UAV propulsion energy plus wireless power "
       "transfer energy plus relay energy. Constraints: the uplink SNR must reach "
    << format_double(c.snr_threshold) << ", the uplink rate must reach " << format_double(c.min_throughput)
    << " bit/s, and no pending terminal may wait longer than " << c.aoi_max
    << " slots (age of information). A slot that violates any constraint sets the penalty factor to "
    << format_double(c.penalty_factor) << ".";

  WorldDescriptor d;
  d.system_model = s.str();
  for (const auto& f : kFactorRegistry) d.factors.push_back({std::string(f.name), std::string(f.description)});
  d.observation_format =
      "Each slot the reward function receives the factor values listed above as real numbers and must return one "
      "real number. The agent maximizes the negative of your expression, so the expression is a cost: smaller is "
      "better.";
  return d;
}

PromptBundle build_prompt(const WorldDescriptor& world, const std::string& objective) {
  if (world.factors.empty()) throw std::invalid_argument("factor registry is empty");
  if (objective.empty()) throw std::invalid_argument("objective is empty");

  std::ostringstream role;
  role << "You are a reward function designer for a deep reinforcement learning agent that controls a UAV. "
          "Your job is to understand the system model, reason about which observed factors drive the objective, "
          "and write the per-slot reward as an arithmetic expression over the given factors.\n\n"
       << "Notes:\n"
       << "1. Use only the information given in this prompt. Do not introduce variables, constants or quantities "
          "that are not listed as factors.\n"
       << "2. Focus on the factors that matter most for the objective and keep the expression simple.\n"
       << "3. The expression may use the listed factor names, numeric literals, + - * / and parentheses. "
          "Nothing else is allowed: no functions, no exponent operator, no comparisons.\n"
       << "4. The expression is a cost to be minimized; it must stay finite for every factor value in the stated "
          "ranges, so never divide by a factor that can be zero.\n"
       << "5. Multiply by penalty to punish slots that violate constraints.\n\n"
       << "Output format: reply with exactly one JSON object and nothing else, with this schema:\n"
       << "{\"factors\": [{\"name\": <factor name>, \"weight\": <number>}, ...], "
          "\"expression\": <string>, \"rationale\": <string>}\n"
       << "\"factors\" lists the factors you use with their weights, \"expression\" is the cost expression, "
          "and \"rationale\" briefly explains the design.";

  std::ostringstream task;
  task << "System model:\n" << world.system_model << "\n\n"
       << "Optimization objective: " << objective << "\n\n"
       << "Available factors:\n";
  for (const auto& f : world.factors) task << "- " << f.name << ": " << f.description << "\n";
  task << "\nInput/output: " << world.observation_format;

  return {role.str(), task.str()};
}

}  // namespace uavrl::reward
