#pragma once

#include "gapulse/sequence.hpp"

namespace gapulse {

/// Sequence simulator with the drift Hamiltonian cached; cheap enough to
/// call once per fitness evaluation inside the optimizer loop.
class Simulator {
 public:
  explicit Simulator(SpinSystem system);

  /// Composed propagator of the whole sequence (pulse, then delay, per gene).
  /// Throws std::invalid_argument when any gene carries a crusher.
  Operator unitary(const PulseSequence& seq) const;

  /// Evolves a deviation through the sequence, applying crushers where
  /// flagged.
  DensityDeviation deviation(const PulseSequence& seq, const DensityDeviation& rho_in) const;

  const SpinSystem& system() const { return system_; }

 private:
  SpinSystem system_;
  Eigen::VectorXd h_diag_;  // drift Hamiltonian diagonal, rad/s
};

struct SimulationOutput {
  ObjectiveKind kind;
  Eigen::MatrixXcd value;  // propagator (Unitary) or evolved deviation (State)
};

/// One-shot wrappers over Simulator.
Operator simulate_unitary(const SpinSystem& system, const PulseSequence& seq);
DensityDeviation simulate_deviation(const SpinSystem& system, const PulseSequence& seq,
                                    const DensityDeviation& rho_in);

/// Runs the sequence against the problem's objective.
SimulationOutput simulate_sequence(const PulseSequence& seq, const Problem& problem);

/// A state whose norm falls below this fraction of the input norm is
/// considered fully crushed (gradients leave only roundoff behind).
inline constexpr double kCrushedNormTol = 1e-10;

/// Fidelity of the simulated result against the problem target
/// (operator_fidelity or state_fidelity). Deterministic in seq.
/// Throws std::invalid_argument when a state is fully crushed.
double evaluate_fitness(const PulseSequence& seq, const Problem& problem);

}  // namespace gapulse
