#include "gapulse/catalog.hpp"

#include "gapulse/fidelity.hpp"
#include "gapulse/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// The three-pulse selective-rotation skeleton with the delay in one slot.
PulseSequence sqr_skeleton(int spin, double theta, double phi, int slot, double delay_s) {
  const double phi1 = wrap_angle(spin == 1 ? phi - kPi / 2.0 : phi + kPi / 2.0);
  const double phi2 = wrap_angle(spin == 1 ? phi + kPi / 2.0 : phi - kPi / 2.0);
  PulseSequence seq;
  seq.n_channels = 1;
  seq.genes.resize(3);
  seq.genes[0] = {{kPi / 2.0}, {phi1}, 0.0, false};
  seq.genes[1] = {{kPi / 2.0}, {phi2}, 0.0, false};
  seq.genes[2] = {{wrap_angle(theta / 2.0)}, {wrap_angle(phi)}, 0.0, false};
  seq.genes[slot].delay_s = delay_s;
  return seq;
}

double shift_scale(const SpinSystem& system) {
  double smax = 0.0;
  for (double s : system.shifts_hz) smax = std::max(smax, std::abs(s));
  return smax;
}

SequenceTemplate fixed_flip_template(const std::vector<double>& flips, bool free_crushers) {
  SequenceTemplate t;
  t.n_channels = 1;
  t.genes.resize(flips.size());
  for (size_t i = 0; i < flips.size(); ++i) {
    GeneTemplate& g = t.genes[i];
    g.flips = {flips[i]};
    g.phases = {std::nullopt};
    g.delay = std::nullopt;
    g.crusher = free_crushers ? std::optional<bool>{} : std::optional<bool>{false};
  }
  t.validate();
  return t;
}

StateLabel parse_state_name(const std::string& name) {
  if (name == "pps00") return StateLabel::Pps00;
  if (name == "pps01") return StateLabel::Pps01;
  if (name == "pps10") return StateLabel::Pps10;
  if (name == "pps11") return StateLabel::Pps11;
  if (name == "bell-psi-plus") return StateLabel::PsiPlus;
  if (name == "bell-psi-minus") return StateLabel::PsiMinus;
  if (name == "bell-phi-plus") return StateLabel::PhiPlus;
  if (name == "bell-phi-minus") return StateLabel::PhiMinus;
  throw std::invalid_argument("unknown problem name: " + name);
}

}  // namespace

CnotReferenceAngles cnot_reference_angles(GateLabel::Kind kind) {
  switch (kind) {
    case GateLabel::Kind::Cnot12: return {kPi / 4.0, kPi / 2.0};
    case GateLabel::Kind::Cnot1b2: return {kPi / 4.0, 0.0};
    case GateLabel::Kind::Cnot21: return {3.0 * kPi / 4.0, 0.0};
    case GateLabel::Kind::Cnot2b1: return {3.0 * kPi / 4.0, kPi / 2.0};
    default: throw std::invalid_argument("cnot_reference_angles: not a CNOT label");
  }
}

BellReferenceParams bell_reference_params(StateLabel label) {
  switch (label) {
    case StateLabel::PsiPlus: return {3.0 * kPi / 4.0, 9.0 * kPi / 8.0, 3.0 * kPi / 4.0, 1.0 / 16.0, 0.0};
    case StateLabel::PsiMinus: return {3.0 * kPi / 4.0, 9.0 * kPi / 8.0, kPi / 4.0, 1.0 / 16.0, 0.0};
    case StateLabel::PhiPlus: return {0.0, 5.0 * kPi / 8.0, 3.0 * kPi / 4.0, 9.0 / 48.0, 9.0 / 8.0};
    case StateLabel::PhiMinus: return {0.0, 5.0 * kPi / 8.0, kPi / 4.0, 9.0 / 48.0, 9.0 / 8.0};
    default: throw std::invalid_argument("bell_reference_params: not a Bell label");
  }
}

SqrSolution solve_sqr(const SpinSystem& system, int spin, double theta, double phi) {
  system.validate();
  if (system.n_spins != 2 || system.n_channels() != 1)
    throw std::invalid_argument("solve_sqr: needs a two-spin single-channel system");
  const GateLabel label = GateLabel::sqr(spin, theta, wrap_angle(phi));
  const Operator target = target_unitary(label, 2);
  const Simulator sim(system);

  const double smax = shift_scale(system);
  if (smax == 0.0) throw std::invalid_argument("solve_sqr: system has no chemical shift");
  const double d_hi = 1.0 / smax;  // one full period of the relative z-phase

  SqrSolution best{PulseSequence{}, -1.0, 0};
  const int grid_n = 4000;
  for (int slot = 0; slot < 3; ++slot) {
    auto fidelity_at = [&](double d) {
      return operator_fidelity(sim.unitary(sqr_skeleton(spin, theta, phi, slot, d)), target);
    };
    // coarse grid, then golden-section refinement around the best cell
    double gd = 0.0, gf = -1.0;
    for (int i = 0; i <= grid_n; ++i) {
      const double d = d_hi * i / grid_n;
      const double f = fidelity_at(d);
      if (f > gf) {
        gf = f;
        gd = d;
      }
    }
    double lo = std::max(0.0, gd - d_hi / grid_n);
    double hi = std::min(d_hi, gd + d_hi / grid_n);
    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_gr * (hi - lo), x2 = lo + inv_gr * (hi - lo);
    double f1 = fidelity_at(x1), f2 = fidelity_at(x2);
    for (int it = 0; it < 120; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_gr * (hi - lo);
        f2 = fidelity_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_gr * (hi - lo);
        f1 = fidelity_at(x1);
      }
    }
    const double d_opt = (f1 > f2) ? x1 : x2;
    const double f_opt = std::max(f1, f2);
    if (f_opt > best.fidelity) best = {sqr_skeleton(spin, theta, phi, slot, d_opt), f_opt, slot};
  }
  return best;
}

PulseSequence sqr_sequence(int spin, double theta, double phi, const SpinSystem& system) {
  SpinSystem uncoupled = system;
  for (auto& row : uncoupled.j_hz) std::fill(row.begin(), row.end(), 0.0);
  if (solve_sqr(uncoupled, spin, theta, phi).fidelity < 0.999)
    throw std::runtime_error("sqr_sequence: template cannot reach 0.999 even at J=0");
  return solve_sqr(system, spin, theta, phi).sequence;
}

Problem sqr_problem(const SpinSystem& system, int spin, double theta, double phi) {
  const GateLabel label = GateLabel::sqr(spin, theta, wrap_angle(phi));
  const double phi1 = wrap_angle(spin == 1 ? phi - kPi / 2.0 : phi + kPi / 2.0);
  const double phi2 = wrap_angle(spin == 1 ? phi + kPi / 2.0 : phi - kPi / 2.0);
  SequenceTemplate t;
  t.n_channels = 1;
  t.genes.resize(3);
  t.genes[0] = {{kPi / 2.0}, {phi1}, std::nullopt, false};
  t.genes[1] = {{kPi / 2.0}, {phi2}, std::nullopt, false};
  t.genes[2] = {{wrap_angle(theta / 2.0)}, {wrap_angle(phi)}, std::nullopt, false};
  const std::string name = spin == 1 ? "sqr1" : "sqr2";
  return make_unitary_problem(name, system, target_unitary(label, system.n_spins), std::move(t));
}

Problem cnot_problem(const SpinSystem& system, GateLabel::Kind kind) {
  const GateLabel label = GateLabel::cnot(kind);
  std::string name;
  switch (kind) {
    case GateLabel::Kind::Cnot12: name = "cnot12"; break;
    case GateLabel::Kind::Cnot1b2: name = "cnot1b2"; break;
    case GateLabel::Kind::Cnot21: name = "cnot21"; break;
    case GateLabel::Kind::Cnot2b1: name = "cnot2b1"; break;
    default: throw std::invalid_argument("cnot_problem: not a CNOT label");
  }
  SequenceTemplate t = SequenceTemplate::free_form(system.n_channels(), 3, false);
  return make_unitary_problem(name, system, target_unitary(label, system.n_spins), std::move(t));
}

Problem pps_problem(const SpinSystem& system, StateLabel label) {
  std::string name;
  switch (label) {
    case StateLabel::Pps00: name = "pps00"; break;
    case StateLabel::Pps01: name = "pps01"; break;
    case StateLabel::Pps10: name = "pps10"; break;
    case StateLabel::Pps11: name = "pps11"; break;
    default: throw std::invalid_argument("pps_problem: not a PPS label");
  }
  // six pi/2 pulses and one central pi refocusing pulse
  SequenceTemplate t = fixed_flip_template(
      {kPi / 2.0, kPi / 2.0, kPi / 2.0, kPi, kPi / 2.0, kPi / 2.0, kPi / 2.0}, true);
  return make_state_problem(name, system, target_state(StateLabel::Thermal), target_state(label),
                            std::move(t));
}

Problem bell_problem(const SpinSystem& system, StateLabel label, bool final_crusher) {
  std::string name;
  switch (label) {
    case StateLabel::PsiPlus: name = "bell-psi-plus"; break;
    case StateLabel::PsiMinus: name = "bell-psi-minus"; break;
    case StateLabel::PhiPlus: name = "bell-phi-plus"; break;
    case StateLabel::PhiMinus: name = "bell-phi-minus"; break;
    default: throw std::invalid_argument("bell_problem: not a Bell label");
  }
  SequenceTemplate t = fixed_flip_template(std::vector<double>(10, kPi / 2.0), true);
  if (final_crusher) {
    GeneTemplate g;
    g.flips = {0.0};
    g.phases = {0.0};
    g.delay = 0.0;
    g.crusher = true;
    t.genes.push_back(g);
  }
  return make_state_problem(name, system, target_state(StateLabel::Thermal), target_state(label),
                            std::move(t));
}

Problem catalog_problem(const std::string& name, const SpinSystem& system, double theta,
                        double phi) {
  if (name == "sqr1") return sqr_problem(system, 1, theta, phi);
  if (name == "sqr2") return sqr_problem(system, 2, theta, phi);
  if (name == "cnot12") return cnot_problem(system, GateLabel::Kind::Cnot12);
  if (name == "cnot1b2") return cnot_problem(system, GateLabel::Kind::Cnot1b2);
  if (name == "cnot21") return cnot_problem(system, GateLabel::Kind::Cnot21);
  if (name == "cnot2b1") return cnot_problem(system, GateLabel::Kind::Cnot2b1);
  const StateLabel label = parse_state_name(name);
  switch (label) {
    case StateLabel::Pps00:
    case StateLabel::Pps01:
    case StateLabel::Pps10:
    case StateLabel::Pps11: return pps_problem(system, label);
    default: return bell_problem(system, label);
  }
}

std::vector<std::string> catalog_names() {
  return {"sqr1",           "sqr2",           "cnot12",        "cnot1b2",
          "cnot21",         "cnot2b1",        "pps00",         "pps01",
          "pps10",          "pps11",          "bell-psi-plus", "bell-psi-minus",
          "bell-phi-plus",  "bell-phi-minus"};
}

DensityDeviation singlet_readout(const DensityDeviation& rho, const SpinSystem& system) {
  system.validate();
  if (system.n_spins != 2) throw std::invalid_argument("singlet_readout: two-spin systems only");
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("singlet_readout: deviation must be 4x4");
  const Operator z_evo = matrix_exponential(
      (kPi / 4.0) * (spin_operator(Axis::Z, 1, 2) - spin_operator(Axis::Z, 2, 2)), 1.0);
  const Operator x_pulse = matrix_exponential(
      (kPi / 2.0) * (spin_operator(Axis::X, 1, 2) + spin_operator(Axis::X, 2, 2)), 1.0);
  const Operator u = x_pulse * z_evo;
  return u * rho * u.adjoint();
}

}  // namespace gapulse
