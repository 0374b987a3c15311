#include "uavrl/bench/emit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "uavrl/common/digest.hpp"
#include "uavrl/common/kv_config.hpp"

using nlohmann::ordered_json;

namespace uavrl::bench {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

ordered_json arm_json(const ArmSummary& s) {
  ordered_json runs = ordered_json::array();
  for (std::size_t i = 0; i < s.seeds.size(); ++i) {
    runs.push_back({{"seed", s.seeds[i]}, {"first_window_energy", s.first_window[i]},
                    {"final_window_energy", s.final_window[i]}});
  }
  return {{"arm", s.arm},         {"median_final_energy", s.median}, {"q1", s.q1},
          {"q3", s.q3},           {"iqr", s.iqr()},                  {"median_first_energy", s.first_median},
          {"convergence_ratio", s.convergence_ratio()}, {"seeds", std::move(runs)}};
}

ordered_json report_json(const ComparisonReport& report) {
  ordered_json arms = ordered_json::array();
  for (const auto& a : report.arms) arms.push_back(arm_json(a));
  ordered_json imps = ordered_json::array();
  for (const auto& i : report.improvements) {
    imps.push_back({{"algorithm", i.algorithm}, {"manual_arm", i.manual_arm}, {"llm_arm", i.llm_arm},
                    {"manual_median", i.manual_median}, {"llm_median", i.llm_median},
                    {"improvement", i.improvement}});
  }
  ordered_json runs = ordered_json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"arm", r.arm}, {"seed", r.seed}, {"episodes", r.rows.size()},
                    {"config_digest", r.config_digest}, {"csv_sha256", sha256_hex(run_csv(r))}});
  }
  return {{"digest", runs_digest(report.runs)}, {"arms", std::move(arms)}, {"improvements", std::move(imps)},
          {"runs", std::move(runs)}};
}

std::string csv_name(const RunRecord& r) { return r.arm + "_seed" + std::to_string(r.seed) + ".csv"; }

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string run_csv(const RunRecord& r) {
  std::ostringstream s;
  s << kRunCsvHeader << "\n";
  for (const auto& row : r.rows) {
    s << r.arm << ',' << r.seed << ',' << row.episode << ',' << row.slots << ',' << format_double(row.energy_total)
      << ',' << format_double(row.energy_tx) << ',' << format_double(row.energy_propulsion) << ','
      << format_double(row.energy_wpt) << ',' << format_double(row.energy_relay) << ','
      << row.violations_throughput << ',' << row.violations_decode << ',' << row.violations_freshness << ','
      << row.packets_delivered << ',' << format_double(row.cumulative_reward) << "\n";
  }
  return s.str();
}

RunRecord parse_run_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) throw std::runtime_error("unexpected run CSV header");
  RunRecord r;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != 14) throw std::runtime_error("run CSV row has " + std::to_string(c.size()) + " columns");
    if (first) {
      r.arm = c[0];
      r.seed = std::stoull(c[1]);
      first = false;
    }
    EpisodeRow row;
    row.episode = std::stoi(c[2]);
    row.slots = std::stoi(c[3]);
    row.energy_total = parse_double_field("energy_total", c[4]);
    row.energy_tx = parse_double_field("energy_tx", c[5]);
    row.energy_propulsion = parse_double_field("energy_propulsion", c[6]);
    row.energy_wpt = parse_double_field("energy_wpt", c[7]);
    row.energy_relay = parse_double_field("energy_relay", c[8]);
    row.violations_throughput = std::stoi(c[9]);
    row.violations_decode = std::stoi(c[10]);
    row.violations_freshness = std::stoi(c[11]);
    row.packets_delivered = std::stoi(c[12]);
    row.cumulative_reward = parse_double_field("cumulative_reward", c[13]);
    r.rows.push_back(row);
  }
  return r;
}

RunRecord read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_csv(ss.str());
}

std::string runs_digest(const std::vector<RunRecord>& runs) {
  std::string all;
  for (const auto& r : runs) all += r.config_digest + "\n" + run_csv(r);
  return sha256_hex(all);
}

std::string summary_json(const ComparisonReport& report) { return report_json(report).dump(2) + "\n"; }

std::vector<std::filesystem::path> emit_comparison(const ComparisonReport& report, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& r : report.runs) {
    const auto path = dir / "runs" / csv_name(r);
    write_text_file(path, run_csv(r));
    written.push_back(path);
  }
  write_text_file(dir / "summary.json", summary_json(report));
  written.push_back(dir / "summary.json");
  return written;
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream s;
  s << "packet_size,arm,median,q1,q3,first_median,seeds,final_window_per_seed\n";
  for (const auto& c : table.cells) {
    s << format_double(c.packet_size) << ',' << c.summary.arm << ',' << format_double(c.summary.median) << ','
      << format_double(c.summary.q1) << ',' << format_double(c.summary.q3) << ','
      << format_double(c.summary.first_median) << ',';
    for (std::size_t i = 0; i < c.summary.seeds.size(); ++i) s << (i ? ";" : "") << c.summary.seeds[i];
    s << ',';
    for (std::size_t i = 0; i < c.summary.final_window.size(); ++i) {
      s << (i ? ";" : "") << format_double(c.summary.final_window[i]);
    }
    s << "\n";
  }
  return s.str();
}

std::string sweep_summary_json(const SweepTable& table) {
  ordered_json sizes = ordered_json::array();
  std::vector<RunRecord> all_runs;
  for (std::size_t i = 0; i < table.sizes.size(); ++i) {
    auto j = report_json(table.reports[i]);
    j["packet_size"] = table.sizes[i];
    sizes.push_back(std::move(j));
    all_runs.insert(all_runs.end(), table.reports[i].runs.begin(), table.reports[i].runs.end());
  }
  return ordered_json{{"digest", runs_digest(all_runs)}, {"sizes", std::move(sizes)}}.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_sweep(const SweepTable& table, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < table.sizes.size(); ++i) {
    const auto sub = dir / "runs" / ("size_" + std::to_string(std::llround(table.sizes[i])));
    for (const auto& r : table.reports[i].runs) {
      write_text_file(sub / csv_name(r), run_csv(r));
      written.push_back(sub / csv_name(r));
    }
  }
  write_text_file(dir / "sweep.csv", sweep_csv(table));
  written.push_back(dir / "sweep.csv");
  write_text_file(dir / "sweep_summary.json", sweep_summary_json(table));
  written.push_back(dir / "sweep_summary.json");
  return written;
}

}  // namespace uavrl::bench
