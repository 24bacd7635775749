#pragma once

#include "gapulse/operators.hpp"

namespace gapulse {

// |Tr(target^dagger * achieved)| / dim. Insensitive to a global phase;
// equals 1 exactly when achieved = e^{i a} * target.
double operator_fidelity(const Operator& achieved, const Operator& target);

// Normalized Hilbert-Schmidt overlap Tr(achieved * target) / (|achieved| |target|)
// for traceless Hermitian deviations. Scale-invariant; 1 means proportional
// with a positive factor.
double state_fidelity(const DensityDeviation& achieved, const DensityDeviation& target);

// |achieved|_F / |initial|_F: how much of the initial deviation norm survived
// (crushers can only shrink it).
double transfer_efficiency(const DensityDeviation& achieved, const DensityDeviation& initial);

}  // namespace gapulse
