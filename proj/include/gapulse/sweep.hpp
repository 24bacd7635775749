#pragma once

#include "gapulse/catalog.hpp"
#include "gapulse/ga.hpp"

#include <vector>

namespace gapulse {

/// Grid for fidelity-vs-coupling studies: each point builds a two-spin
/// system with shifts +-delta and J = ratio * delta.
struct SweepGrid {
  std::vector<double> ratios;  // J/delta values, >= 0
  std::vector<double> thetas;  // SQR flip angles (sqr family only)
  double delta_hz = 500.0;

  void validate() const;

  /// ratios 0.00 .. 0.10 step 0.01; thetas pi/8, pi/4, 3pi/8, pi/2, 3pi/4, pi.
  static SweepGrid defaults();
};

enum class SweepFamily { Sqr, Cnot, Pps };

/// How each grid point is solved: the closed three-pulse template with a
/// re-solved delay (sqr only), or a fresh GA run.
enum class SweepSolver { FixedTemplate, Ga };

struct SweepRow {
  double j_over_delta = 0.0;
  double theta = 0.0;  // sqr family only; 0 otherwise
  double fidelity = 0.0;
  bool converged = false;
};

struct SweepTable {
  SweepFamily family;
  std::vector<SweepRow> rows;
};

/// One row per grid point (ratios x thetas for sqr, ratios otherwise).
/// Families: Sqr -> selective rotation of spin 1; Cnot -> cnot12;
/// Pps -> pps00. GA rows run solve() with a per-point sub-seed; converged
/// records cutoff attainment (or the 0.999 template check for sqr). Solver
/// failures are recorded in the row, never thrown.
SweepTable fidelity_sweep(SweepFamily family, SweepSolver solver, const SweepGrid& grid,
                          const GAConfig& config);

}  // namespace gapulse
