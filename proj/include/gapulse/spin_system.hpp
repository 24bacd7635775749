#pragma once

#include <vector>

namespace gapulse {

/// Weakly coupled spin-1/2 system in the rotating frame.
///
/// Shifts and couplings are in Hz; the 2*pi factor is applied when the
/// Hamiltonian is built. Spins are grouped into RF channels: every spin on a
/// channel receives the same pulse parameters.
struct SpinSystem {
  int n_spins = 0;
  std::vector<double> shifts_hz;            // per-spin offset
  std::vector<std::vector<double>> j_hz;    // symmetric, zero diagonal
  std::vector<int> channel_of_spin;         // 0-based channel index per spin

  int n_channels() const;
  int dim() const;  // 2^n_spins

  /// max|J_ij| / min nonzero |shift_i - shift_j|; 0 when all J vanish.
  double weak_coupling_ratio() const;

  /// Throws std::invalid_argument when a field violates its invariant
  /// (asymmetric J, nonzero J diagonal, bad channel indices, size mismatch).
  void validate() const;

  /// The two-spin homonuclear system used throughout: shifts +delta/-delta,
  /// one coupling J, a single non-selective channel covering both spins.
  static SpinSystem homonuclear_pair(double delta_hz, double j_hz);
};

}  // namespace gapulse
