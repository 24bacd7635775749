#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gapulse/spin_system.hpp"

namespace gapulse {

// Dense complex matrices in the Zeeman product basis |00>,|01>,|10>,|11>
// (spin 1 leftmost, Iz eigenvalue +1/2 before -1/2).
using Operator = Eigen::MatrixXcd;

// Traceless Hermitian deviation part of a density matrix (identity omitted).
using DensityDeviation = Eigen::MatrixXcd;

using Complex = std::complex<double>;

enum class Axis { X, Y, Z };

/// Product operator I_a^k: (pauli_a/2) on spin `spin_index` (1-based),
/// identity elsewhere. Hermitian and traceless.
Operator spin_operator(Axis axis, int spin_index, int n_spins);

/// Rotating-frame weak-coupling Hamiltonian, rad/s:
///   H = sum_k 2*pi*shift_k * Iz^k  +  sum_{k<l} 2*pi*J_kl * Iz^k Iz^l.
/// Diagonal in the Zeeman basis.
Operator build_hamiltonian(const SpinSystem& system);

/// exp(-i H t) for Hermitian H, via eigendecomposition.
/// Throws std::invalid_argument when H is not Hermitian.
Operator matrix_exponential(const Operator& hamiltonian, double t_s);

/// Ideal hard pulse: every spin of channel c rotates by
/// exp(-i flip_c (cos(phase_c) Ix + sin(phase_c) Iy)); the drift Hamiltonian
/// is off for the duration (instantaneous-pulse limit). One (flip, phase)
/// pair per channel.
Operator pulse_propagator(const SpinSystem& system, const std::vector<double>& flips_rad,
                          const std::vector<double>& phases_rad);

/// Free evolution exp(-i H d) under the drift Hamiltonian; diagonal.
Operator delay_propagator(const SpinSystem& system, double delay_s);

/// Per-basis-state coherence order difference table: order(r,c) = M_r - M_c
/// with M_b the total Iz quantum number of basis state b (in units of 1/2,
/// i.e. integer n_spins - 2*popcount).
std::vector<int> total_quantum_numbers(int dim);

/// Ideal pulsed-field-gradient crusher: zeroes every element of nonzero
/// coherence order, keeping populations and zero-quantum coherences exactly.
DensityDeviation apply_crusher(const DensityDeviation& rho);

/// Real parts of the diagonal, basis order |00>,|01>,|10>,|11>.
Eigen::VectorXd diagonal_populations(const DensityDeviation& rho);

// Invariant checks used in contracts and tests.
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-10);
bool is_unitary(const Eigen::MatrixXcd& m, double tol = 1e-10);

}  // namespace gapulse
