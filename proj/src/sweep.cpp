#include "gapulse/sweep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr double kPi = std::numbers::pi;

SweepRow ga_row(const Problem& problem, const GAConfig& config, int point_index) {
  GAConfig c = config;
  c.rng_seed = derive_seed(config.rng_seed, point_index);
  const GAResult r = solve(problem, c);
  SweepRow row;
  row.fidelity = r.best_fitness;
  row.converged = r.reached_cutoff;
  return row;
}

}  // namespace

void SweepGrid::validate() const {
  if (ratios.empty()) throw std::invalid_argument("SweepGrid: empty ratio grid");
  for (double r : ratios)
    if (r < 0.0) throw std::invalid_argument("SweepGrid: ratios must be >= 0");
  if (delta_hz == 0.0) throw std::invalid_argument("SweepGrid: delta_hz must be nonzero");
}

SweepGrid SweepGrid::defaults() {
  SweepGrid g;
  for (int i = 0; i <= 10; ++i) g.ratios.push_back(i / 100.0);
  g.thetas = {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi};
  g.delta_hz = 500.0;
  return g;
}

SweepTable fidelity_sweep(SweepFamily family, SweepSolver solver, const SweepGrid& grid,
                          const GAConfig& config) {
  grid.validate();
  config.validate();
  if (solver == SweepSolver::FixedTemplate && family != SweepFamily::Sqr)
    throw std::invalid_argument("fidelity_sweep: only the sqr family has a fixed template");
  if (family == SweepFamily::Sqr && grid.thetas.empty())
    throw std::invalid_argument("fidelity_sweep: sqr family needs a theta grid");

  SweepTable table{family, {}};
  int point = 0;
  for (double ratio : grid.ratios) {
    const SpinSystem system =
        SpinSystem::homonuclear_pair(grid.delta_hz, ratio * grid.delta_hz);
    if (family == SweepFamily::Sqr) {
      for (double theta : grid.thetas) {
        SweepRow row;
        row.j_over_delta = ratio;
        row.theta = theta;
        if (solver == SweepSolver::FixedTemplate) {
          const SqrSolution sol = solve_sqr(system, 1, theta, kPi / 2.0);
          SpinSystem uncoupled = system;
          for (auto& r : uncoupled.j_hz) std::fill(r.begin(), r.end(), 0.0);
          row.fidelity = sol.fidelity;
          row.converged = solve_sqr(uncoupled, 1, theta, kPi / 2.0).fidelity >= 0.999;
        } else {
          const SweepRow ga = ga_row(sqr_problem(system, 1, theta, kPi / 2.0), config, point);
          row.fidelity = ga.fidelity;
          row.converged = ga.converged;
        }
        table.rows.push_back(row);
        ++point;
      }
    } else {
      const Problem problem = family == SweepFamily::Cnot
                                  ? cnot_problem(system, GateLabel::Kind::Cnot12)
                                  : pps_problem(system, StateLabel::Pps00);
      SweepRow row = ga_row(problem, config, point);
      row.j_over_delta = ratio;
      table.rows.push_back(row);
      ++point;
    }
  }
  return table;
}

}  // namespace gapulse
