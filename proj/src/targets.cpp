#include "gapulse/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Operator cnot_permutation(int row_a, int row_b) {
  Operator u = Operator::Identity(4, 4);
  u(row_a, row_a) = u(row_b, row_b) = 0.0;
  u(row_a, row_b) = u(row_b, row_a) = 1.0;
  return u;
}

DensityDeviation pure_deviation(const Eigen::Vector4cd& s) {
  return s * s.adjoint() - 0.25 * Operator::Identity(4, 4);
}

}  // namespace

GateLabel GateLabel::sqr(int spin, double theta, double phi) {
  GateLabel l;
  l.kind = Kind::Sqr;
  l.spin = spin;
  l.theta = theta;
  l.phi = phi;
  l.validate();
  return l;
}

GateLabel GateLabel::cnot(Kind kind) {
  if (kind == Kind::Sqr) throw std::invalid_argument("GateLabel: cnot() given the Sqr kind");
  GateLabel l;
  l.kind = kind;
  l.validate();
  return l;
}

void GateLabel::validate() const {
  if (kind != Kind::Sqr) return;
  if (spin != 1 && spin != 2) throw std::invalid_argument("GateLabel: spin must be 1 or 2");
  if (!(theta > 0.0 && theta <= std::numbers::pi))
    throw std::invalid_argument("GateLabel: theta must be in (0, pi]");
  if (phi < 0.0 || phi >= kTwoPi)
    throw std::invalid_argument("GateLabel: phi must be in [0, 2*pi)");
}

Operator target_unitary(const GateLabel& label, int n_spins) {
  label.validate();
  if (label.kind == GateLabel::Kind::Sqr) {
    if (label.spin > n_spins) throw std::invalid_argument("target_unitary: spin index out of range");
    const Operator g =
        label.theta * (std::cos(label.phi) * spin_operator(Axis::X, label.spin, n_spins) +
                       std::sin(label.phi) * spin_operator(Axis::Y, label.spin, n_spins));
    return matrix_exponential(g, 1.0);
  }
  if (n_spins != 2) throw std::invalid_argument("target_unitary: CNOT labels are two-spin gates");
  switch (label.kind) {
    case GateLabel::Kind::Cnot12: return cnot_permutation(2, 3);  // |10> <-> |11>
    case GateLabel::Kind::Cnot1b2: return cnot_permutation(0, 1); // |00> <-> |01>
    case GateLabel::Kind::Cnot21: return cnot_permutation(1, 3);  // |01> <-> |11>
    case GateLabel::Kind::Cnot2b1: return cnot_permutation(0, 2); // |00> <-> |10>
    default: throw std::invalid_argument("target_unitary: unknown gate label");
  }
}

DensityDeviation target_state(StateLabel label) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd s = Eigen::Vector4cd::Zero();
  switch (label) {
    case StateLabel::Thermal: {
      DensityDeviation rho = DensityDeviation::Zero(4, 4);
      rho(0, 0) = 1.0;
      rho(3, 3) = -1.0;  // Iz1 + Iz2
      return rho;
    }
    case StateLabel::Pps00: s(0) = 1.0; break;
    case StateLabel::Pps01: s(1) = 1.0; break;
    case StateLabel::Pps10: s(2) = 1.0; break;
    case StateLabel::Pps11: s(3) = 1.0; break;
    case StateLabel::PsiPlus: s(0) = r; s(3) = r; break;
    case StateLabel::PsiMinus: s(0) = r; s(3) = -r; break;
    case StateLabel::PhiPlus: s(1) = r; s(2) = r; break;
    case StateLabel::PhiMinus: s(1) = r; s(2) = -r; break;
    default: throw std::invalid_argument("target_state: unknown state label");
  }
  switch (label) {
    case StateLabel::Pps00:
    case StateLabel::Pps01:
    case StateLabel::Pps10:
    case StateLabel::Pps11: return 2.0 * pure_deviation(s);
    default: return pure_deviation(s);
  }
}

}  // namespace gapulse
