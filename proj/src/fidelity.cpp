#include "gapulse/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace gapulse {

double operator_fidelity(const Operator& achieved, const Operator& target) {
  if (achieved.rows() != target.rows() || achieved.cols() != target.cols())
    throw std::invalid_argument("operator_fidelity: dimension mismatch");
  if (achieved.rows() != achieved.cols())
    throw std::invalid_argument("operator_fidelity: operators must be square");
  const Complex tr = (target.adjoint() * achieved).trace();
  return std::abs(tr) / static_cast<double>(achieved.rows());
}

double state_fidelity(const DensityDeviation& achieved, const DensityDeviation& target) {
  if (achieved.rows() != target.rows() || achieved.cols() != target.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  const double na = achieved.norm();
  const double nt = target.norm();
  if (na == 0.0 || nt == 0.0)
    throw std::invalid_argument("state_fidelity: zero-norm deviation");
  // Both deviations are Hermitian, so the overlap trace is real.
  const double overlap = (achieved * target).trace().real();
  return overlap / (na * nt);
}

double transfer_efficiency(const DensityDeviation& achieved, const DensityDeviation& initial) {
  const double n0 = initial.norm();
  if (n0 == 0.0) throw std::invalid_argument("transfer_efficiency: zero-norm initial deviation");
  return achieved.norm() / n0;
}

}  // namespace gapulse
