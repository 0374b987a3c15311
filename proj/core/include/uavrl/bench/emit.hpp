#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "uavrl/bench/experiment.hpp"

namespace uavrl::bench {

/// Run CSV header. x = episode, y = energy_total.
inline constexpr const char* kRunCsvHeader =
    "arm,seed,episode,slots,energy_total,energy_tx,energy_propulsion,energy_wpt,energy_relay,"
    "violations_throughput,violations_decode,violations_freshness,packets_delivered,cumulative_reward";

/// Doubles use shortest round-trip formatting, so read_run_csv(run_csv(r)) == r
/// except for config_digest, which is carried by the summary.
std::string run_csv(const RunRecord& record);
RunRecord parse_run_csv(const std::string& text);
RunRecord read_run_csv(const std::filesystem::path& path);

/// SHA-256 over every run's CSV text in report order.
std::string runs_digest(const std::vector<RunRecord>& runs);

/// Summary JSON: arms (median, IQR, per-seed values), improvements, per-run digests.
std::string summary_json(const ComparisonReport& report);

/// Writes <dir>/runs/<arm>_seed<seed>.csv per run plus <dir>/summary.json.
/// Returns the written paths. Throws std::runtime_error on unwritable directories.
std::vector<std::filesystem::path> emit_comparison(const ComparisonReport& report, const std::filesystem::path& dir);

/// Columns: packet_size,arm,median,q1,q3,first_median,seeds,final_window_per_seed
std::string sweep_csv(const SweepTable& table);
std::string sweep_summary_json(const SweepTable& table);

/// Writes sweep.csv, sweep_summary.json and runs/size_<bits>/<arm>_seed<seed>.csv.
std::vector<std::filesystem::path> emit_sweep(const SweepTable& table, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace uavrl::bench
