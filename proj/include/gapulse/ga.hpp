#pragma once

#include "gapulse/sequence.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gapulse {

struct GAConfig {
  int population_size = 100;
  int generations = 1000;
  double cutoff = 0.99;  // target fidelity; reaching it arms the stall exit
  int elite_count = 2;
  int tournament_size = 3;
  double crossover_rate = 0.8;
  double mutation_rate = 0.15;         // per free parameter
  double sigma_angle_rad = 0.1 * 3.14159265358979323846;
  double sigma_delay_frac = 0.1;       // mutation sigma as a fraction of d_max
  double crusher_flip_prob = 0.05;     // per free crusher flag
  double d_max_s = 0.0;                // 0 = derive from the system (see derive_d_max)
  double mutation_decades = 6.0;       // log-uniform mutation scale spread (0 = fixed sigma)
  std::uint64_t rng_seed = 1;
  int restarts = 3;                    // extra attempts per template size in solve()
  int stall_window = 60;               // stagnant generations (past cutoff) before early exit

  void validate() const;
};

struct GAResult {
  PulseSequence best;
  double best_fitness = -1.0;
  std::vector<double> best_history;  // per-generation best (non-decreasing)
  std::vector<double> mean_history;  // per-generation population mean
  std::uint64_t seed = 0;
  int generations_run = 0;
  int restarts_used = 0;  // attempts beyond the first, filled by solve()
  int gene_count = 0;
  bool reached_cutoff = false;
};

/// Delay search bound: 2/max|J| when any coupling is nonzero, otherwise
/// 2/(min nonzero shift difference), otherwise 1/max|shift|; 1 s for a
/// driftless system where delays are inert.
double derive_d_max(const SpinSystem& system);

/// Deterministic sub-seed for independent jobs (restarts, sweep points);
/// index 0 returns the base seed unchanged.
std::uint64_t derive_seed(std::uint64_t base, int index);

/// Called after each generation's fitness evaluation; must not mutate state
/// that feeds back into the run (results stay observer-independent).
using GenerationObserver = std::function<void(
    int generation, const std::vector<PulseSequence>& population,
    const std::vector<double>& fitness)>;

/// One GA run over the problem's template. Tournament selection, elitism,
/// blend crossover (shorter arc for angles), Gaussian mutation with
/// wrap/reflect bounds, crusher bit flips. Each mutation scales its sigma
/// by 10^(-u * mutation_decades) with u uniform, so one population explores
/// coarsely and fine-tunes simultaneously (the real-coded analogue of
/// per-bit flips in a binary chromosome). Individuals whose state crushes
/// to zero score -1. Fixed seed + config + problem reproduces the result
/// bit for bit. `initial_population` seeds the first generation (shape must
/// match the template); the rest is drawn uniformly.
GAResult run_ga(const Problem& problem, const GAConfig& config,
                const std::vector<PulseSequence>& initial_population = {},
                const GenerationObserver& observer = nullptr);

/// Restart driver: re-runs with derived sub-seeds until the cutoff is
/// reached or attempts are exhausted; extensible templates then grow by one
/// fully free gene (up to 12) and try again. Returns the best result seen.
GAResult solve(const Problem& problem, const GAConfig& config);

/// Shrinks a solution: zeroes free delays/flips and clears free crushers
/// (re-polishing the remaining parameters with a short GA when a plain zero
/// loses too much fidelity), then drops zero-effect genes the template does
/// not pin. The result always keeps fitness >= config.cutoff; the input is
/// returned unchanged when nothing survives.
PulseSequence reduce_genes(const PulseSequence& solution, const Problem& problem,
                           const GAConfig& config);

}  // namespace gapulse
