#pragma once

#include "gapulse/operators.hpp"

namespace gapulse {

/// Two-qubit gate selector. CNOT(c,t) flips spin t when the control spin c
/// is |1>; the *b variants ("bar") condition on the control being |0>.
struct GateLabel {
  enum class Kind { Sqr, Cnot12, Cnot1b2, Cnot21, Cnot2b1 };

  Kind kind = Kind::Cnot12;
  int spin = 1;       // Sqr only: which spin rotates
  double theta = 0.0; // Sqr only: flip angle, (0, pi]
  double phi = 0.0;   // Sqr only: rotation axis phase, [0, 2*pi)

  static GateLabel sqr(int spin, double theta, double phi);
  static GateLabel cnot(Kind kind);
  void validate() const;
};

/// SQR -> exp(-i*theta*(cos(phi) Ix^k + sin(phi) Iy^k)); CNOTs -> the basis
/// permutation. CNOT labels require n_spins == 2.
Operator target_unitary(const GateLabel& label, int n_spins = 2);

/// Deviation density matrices for the two-spin preparations. Pps labels use
/// the doubled pure-state deviation 2*(|b><b| - I/4), which equals
/// Iz1 + Iz2 + 2 Iz1 Iz2 for |00>; Bell labels use |s><s| - I/4. Here
/// psi+- = (|00> +- |11>)/sqrt(2) and phi+- = (|01> +- |10>)/sqrt(2), the
/// reverse of the more common textbook assignment; phi- is the singlet.
enum class StateLabel {
  Thermal,  // Iz1 + Iz2
  Pps00,
  Pps01,
  Pps10,
  Pps11,
  PsiPlus,
  PsiMinus,
  PhiPlus,
  PhiMinus
};

DensityDeviation target_state(StateLabel label);

}  // namespace gapulse
