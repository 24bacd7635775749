#pragma once

#include "gapulse/sequence.hpp"
#include "gapulse/targets.hpp"

#include <string>
#include <vector>

namespace gapulse {

/// Reference working-point constants for the gate/state sequences. The
/// solver derives its own sequences; these are kept as reference data for
/// documentation and spot checks, not as inputs.
struct CnotReferenceAngles {
  double theta;
  double phi;
};
CnotReferenceAngles cnot_reference_angles(GateLabel::Kind kind);

struct BellReferenceParams {
  double phi1, phi2, phi3;
  double d1_delta, d2_delta;  // delays multiplied by the shift delta (dimensionless)
};
BellReferenceParams bell_reference_params(StateLabel label);

struct SqrSolution {
  PulseSequence sequence;
  double fidelity;
  int delay_slot;  // gene index holding the nonzero delay
};

/// Selective rotation of one spin from non-selective pulses: three hard
/// pulses (pi/2)_{phi1}, (pi/2)_{phi2}, (theta/2)_{phi} and a single delay.
/// Spin 1 uses (phi1, phi2) = (phi - pi/2, phi + pi/2), spin 2 the swap.
/// The delay duration and its slot (after pulse 1, 2, or 3) are solved by
/// scalar fidelity maximization on the given system.
SqrSolution solve_sqr(const SpinSystem& system, int spin, double theta, double phi);

/// solve_sqr with a template sanity check: throws std::runtime_error when
/// even the J=0 variant of the system cannot reach fidelity 0.999.
PulseSequence sqr_sequence(int spin, double theta, double phi, const SpinSystem& system);

/// Problem factories. Template shapes: CNOTs start
/// from 3 fully free genes (growable); PPS uses 7 fixed flips (six pi/2 and
/// a central pi), free phases/delays/crushers; Bell uses 10 fixed pi/2
/// flips, free phases/delays/crushers. `final_crusher` appends a pulse-free
/// crusher gene to a Bell problem.
Problem sqr_problem(const SpinSystem& system, int spin, double theta, double phi);
Problem cnot_problem(const SpinSystem& system, GateLabel::Kind kind);
Problem pps_problem(const SpinSystem& system, StateLabel label);
Problem bell_problem(const SpinSystem& system, StateLabel label, bool final_crusher = false);

/// Name-based dispatch over the full catalog: sqr1, sqr2 (rotation given by
/// theta/phi), cnot12, cnot1b2, cnot21, cnot2b1, pps00, pps01, pps10,
/// pps11, bell-psi-plus, bell-psi-minus, bell-phi-plus, bell-phi-minus.
/// Throws std::invalid_argument for unknown names.
Problem catalog_problem(const std::string& name, const SpinSystem& system,
                        double theta = 1.5707963267948966,
                        double phi = 1.5707963267948966);
std::vector<std::string> catalog_names();

/// Readout transform making the singlet observable:
/// U = exp(-i(pi/2)(Ix1+Ix2)) * exp(-i(pi/4)(Iz1-Iz2)); returns U rho U^dagger.
DensityDeviation singlet_readout(const DensityDeviation& rho, const SpinSystem& system);

}  // namespace gapulse
