#pragma once

#include "gapulse/ga.hpp"

#include <string>

namespace gapulse {

/// Everything needed to audit an optimize run. Serialized as JSON and
/// parsed back losslessly; wall_time_s is the only field that varies
/// between identically seeded runs.
struct RunReport {
  std::string problem;
  double delta_hz = 0.0;
  double j_hz = 0.0;
  double theta = 0.0;  // sqr problems only
  double phi = 0.0;    // sqr problems only
  GAConfig config;     // as used, including the effective seed
  double best_fidelity = -1.0;
  bool reached_cutoff = false;
  int genes_before = 0;
  int genes_after = 0;
  int generations_run = 0;
  int restarts_used = 0;
  double wall_time_s = 0.0;
  double history_best_first = 0.0;
  double history_best_last = 0.0;
  double history_mean_last = 0.0;
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Flat key=value lines mirroring the GAConfig field names ('#' comments
/// and blank lines ignored), applied over `base`. Throws std::runtime_error
/// naming an unknown key or unparseable value.
GAConfig apply_config_text(const GAConfig& base, const std::string& text);

/// Exit codes: 0 success, 1 usage/configuration error, 2 quality shortfall.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitQuality = 2;

/// Entry point behind main(): subcommands optimize, verify, sweep.
int run_cli(int argc, const char* const* argv);

}  // namespace gapulse
