#include "gapulse/simulate.hpp"

#include "gapulse/fidelity.hpp"
#include "gapulse/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

Simulator::Simulator(SpinSystem system) : system_(std::move(system)) {
  system_.validate();
  h_diag_ = build_hamiltonian(system_).diagonal().real();
}

Operator Simulator::unitary(const PulseSequence& seq) const {
  seq.validate();
  if (seq.n_channels != system_.n_channels())
    throw std::invalid_argument("Simulator: sequence channel count does not match system");
  const int d = system_.dim();
  Operator u = Operator::Identity(d, d);
  for (const PulseGene& g : seq.genes) {
    if (g.crusher_after)
      throw std::invalid_argument("Simulator: crusher gene in a unitary simulation");
    u = (pulse_propagator(system_, g.flips_rad, g.phases_rad) * u).eval();
    if (g.delay_s != 0.0)
      for (int b = 0; b < d; ++b)
        u.row(b) *= std::exp(-kI * h_diag_(b) * g.delay_s);
  }
  return u;
}

DensityDeviation Simulator::deviation(const PulseSequence& seq,
                                      const DensityDeviation& rho_in) const {
  seq.validate();
  if (seq.n_channels != system_.n_channels())
    throw std::invalid_argument("Simulator: sequence channel count does not match system");
  const int d = system_.dim();
  if (rho_in.rows() != d || rho_in.cols() != d)
    throw std::invalid_argument("Simulator: deviation dimension mismatch");
  DensityDeviation rho = rho_in;
  for (const PulseGene& g : seq.genes) {
    const Operator p = pulse_propagator(system_, g.flips_rad, g.phases_rad);
    rho = (p * rho * p.adjoint()).eval();
    if (g.delay_s != 0.0) {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          rho(r, c) *= std::exp(-kI * (h_diag_(r) - h_diag_(c)) * g.delay_s);
    }
    if (g.crusher_after) rho = apply_crusher(rho);
  }
  return rho;
}

Operator simulate_unitary(const SpinSystem& system, const PulseSequence& seq) {
  return Simulator(system).unitary(seq);
}

DensityDeviation simulate_deviation(const SpinSystem& system, const PulseSequence& seq,
                                    const DensityDeviation& rho_in) {
  return Simulator(system).deviation(seq, rho_in);
}

SimulationOutput simulate_sequence(const PulseSequence& seq, const Problem& problem) {
  const Simulator sim(problem.system);
  if (problem.kind == ObjectiveKind::Unitary)
    return {ObjectiveKind::Unitary, sim.unitary(seq)};
  return {ObjectiveKind::State, sim.deviation(seq, problem.initial_state)};
}

double evaluate_fitness(const PulseSequence& seq, const Problem& problem) {
  const SimulationOutput out = simulate_sequence(seq, problem);
  if (out.kind == ObjectiveKind::Unitary)
    return operator_fidelity(out.value, problem.target_unitary);
  // Crushers zero coherences exactly but leave ~1e-16 cancellation residue
  // in the surviving elements, so "crushed to zero" is a relative test.
  if (out.value.norm() <= kCrushedNormTol * problem.initial_state.norm())
    throw std::invalid_argument("evaluate_fitness: state crushed to zero norm");
  return state_fidelity(out.value, problem.target_state);
}

}  // namespace gapulse
