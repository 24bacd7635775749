// Gate/state targets, sequence catalog, and sweep tests.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapulse/catalog.hpp"
#include "gapulse/fidelity.hpp"
#include "gapulse/simulate.hpp"
#include "gapulse/sweep.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace gapulse;
using std::numbers::pi;

namespace {

SpinSystem pair_with_ratio(double ratio, double delta = 500.0) {
  return SpinSystem::homonuclear_pair(delta, ratio * delta);
}

const std::vector<GateLabel::Kind> kCnotKinds{
    GateLabel::Kind::Cnot12, GateLabel::Kind::Cnot1b2, GateLabel::Kind::Cnot21,
    GateLabel::Kind::Cnot2b1};

const std::vector<StateLabel> kBellLabels{StateLabel::PsiPlus, StateLabel::PsiMinus,
                                          StateLabel::PhiPlus, StateLabel::PhiMinus};

}  // namespace

TEST_CASE("GateLabel validation") {
  CHECK_NOTHROW(GateLabel::sqr(1, pi / 2, pi / 2).validate());
  CHECK_NOTHROW(GateLabel::sqr(2, pi, 0.0).validate());
  CHECK_THROWS_AS(GateLabel::sqr(3, pi / 2, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GateLabel::sqr(1, 0.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GateLabel::sqr(1, pi + 0.1, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GateLabel::sqr(1, pi / 2, 2 * pi).validate(), std::invalid_argument);
  CHECK_NOTHROW(GateLabel::cnot(GateLabel::Kind::Cnot21).validate());
}

TEST_CASE("CNOT targets are the expected basis permutations") {
  const Operator u12 = target_unitary(GateLabel::cnot(GateLabel::Kind::Cnot12));
  // flips the target bit when spin 1 is |1>: |10> <-> |11>
  CHECK(u12(0, 0) == Complex{1.0, 0.0});
  CHECK(u12(1, 1) == Complex{1.0, 0.0});
  CHECK(u12(3, 2) == Complex{1.0, 0.0});
  CHECK(u12(2, 3) == Complex{1.0, 0.0});
  CHECK(u12(2, 2) == Complex{0.0, 0.0});

  const Operator u1b2 = target_unitary(GateLabel::cnot(GateLabel::Kind::Cnot1b2));
  // conditions on spin 1 being |0>: |00> <-> |01>
  CHECK(u1b2(1, 0) == Complex{1.0, 0.0});
  CHECK(u1b2(0, 1) == Complex{1.0, 0.0});
  CHECK(u1b2(2, 2) == Complex{1.0, 0.0});
  CHECK(u1b2(3, 3) == Complex{1.0, 0.0});

  const Operator u21 = target_unitary(GateLabel::cnot(GateLabel::Kind::Cnot21));
  // flips spin 1 when spin 2 is |1>: |01> <-> |11>
  CHECK(u21(3, 1) == Complex{1.0, 0.0});
  CHECK(u21(1, 3) == Complex{1.0, 0.0});
  CHECK(u21(0, 0) == Complex{1.0, 0.0});

  const Operator u2b1 = target_unitary(GateLabel::cnot(GateLabel::Kind::Cnot2b1));
  // conditions on spin 2 being |0>: |00> <-> |10>
  CHECK(u2b1(2, 0) == Complex{1.0, 0.0});
  CHECK(u2b1(0, 2) == Complex{1.0, 0.0});
  CHECK(u2b1(1, 1) == Complex{1.0, 0.0});
}

TEST_CASE("all four CNOT targets are unitary involutions") {
  for (auto kind : kCnotKinds) {
    const Operator u = target_unitary(GateLabel::cnot(kind));
    CHECK(is_unitary(u, 1e-14));
    CHECK((u * u - Operator::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("SQR target matches its generator") {
  for (int spin : {1, 2}) {
    for (double theta : {pi / 8, pi / 2, pi}) {
      for (double phi : {0.0, pi / 2, 4.4}) {
        const Operator u = target_unitary(GateLabel::sqr(spin, theta, phi));
        const Operator gen =
            theta * (std::cos(phi) * oracles::spin_op('x', spin, 2) +
                     std::sin(phi) * oracles::spin_op('y', spin, 2));
        const Operator expect = oracles::expm_taylor(gen, 1.0);
        CHECK((u - expect).cwiseAbs().maxCoeff() < 1e-13);
      }
    }
  }
}

TEST_CASE("SQR targets compose: two quarter turns make a half turn") {
  const Operator u_half = target_unitary(GateLabel::sqr(1, pi / 2, 0.3));
  const Operator u_full = target_unitary(GateLabel::sqr(1, pi, 0.3));
  CHECK(operator_fidelity(u_half * u_half, u_full) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("target_state frozen matrices") {
  const DensityDeviation eq = target_state(StateLabel::Thermal);
  CHECK(eq(0, 0) == Complex{1.0, 0.0});
  CHECK(eq(1, 1) == Complex{0.0, 0.0});
  CHECK(eq(2, 2) == Complex{0.0, 0.0});
  CHECK(eq(3, 3) == Complex{-1.0, 0.0});
  CHECK(eq.cwiseAbs().sum() == doctest::Approx(2.0));  // purely diagonal

  const DensityDeviation p00 = target_state(StateLabel::Pps00);
  CHECK(p00(0, 0).real() == doctest::Approx(1.5).epsilon(1e-15));
  for (int b = 1; b < 4; ++b) CHECK(p00(b, b).real() == doctest::Approx(-0.5).epsilon(1e-15));

  const DensityDeviation p10 = target_state(StateLabel::Pps10);
  CHECK(p10(2, 2).real() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p10(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-15));

  // psi+ = (|00> + |11>)/sqrt(2); psi/phi labels are swapped vs the textbook
  const DensityDeviation psi_plus = target_state(StateLabel::PsiPlus);
  CHECK(psi_plus(0, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(psi_plus(0, 0).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(psi_plus(1, 1).real() == doctest::Approx(-0.25).epsilon(1e-15));

  // phi- = (|01> - |10>)/sqrt(2): the singlet
  const DensityDeviation singlet = target_state(StateLabel::PhiMinus);
  CHECK(singlet(1, 2).real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(singlet(1, 1).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(singlet(0, 0).real() == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("state targets are traceless Hermitian; Bell norms are 3/4") {
  for (StateLabel l : {StateLabel::Thermal, StateLabel::Pps00, StateLabel::Pps01,
                       StateLabel::Pps10, StateLabel::Pps11, StateLabel::PsiPlus,
                       StateLabel::PsiMinus, StateLabel::PhiPlus, StateLabel::PhiMinus}) {
    const DensityDeviation rho = target_state(l);
    CHECK(std::abs(rho.trace()) < 1e-15);
    CHECK(is_hermitian(rho, 1e-15));
  }
  for (StateLabel l : kBellLabels)
    CHECK(target_state(l).squaredNorm() == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("the singlet deviation commutes with the isotropic coupling") {
  const DensityDeviation singlet = target_state(StateLabel::PhiMinus);
  Operator heisenberg = Operator::Zero(4, 4);
  for (char ax : {'x', 'y', 'z'})
    heisenberg += oracles::spin_op(ax, 1, 2) * oracles::spin_op(ax, 2, 2);
  CHECK((heisenberg * singlet - singlet * heisenberg).cwiseAbs().maxCoeff() < 1e-14);

  // and the triplet psi+ does not
  const DensityDeviation psi_plus = target_state(StateLabel::PsiPlus);
  CHECK((heisenberg * psi_plus - psi_plus * heisenberg).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("solve_sqr reaches unit fidelity at J = 0") {
  const auto sys = pair_with_ratio(0.0);
  const SqrSolution s = solve_sqr(sys, 1, pi / 2, pi / 2);
  CHECK(s.fidelity >= 0.999999);
  CHECK(s.delay_slot >= 0);
  CHECK(s.delay_slot <= 2);
  REQUIRE(s.sequence.size() == 3);
  // the solved delay is theta/(4 pi delta) when the shift is +-delta
  CHECK(s.sequence.genes[s.delay_slot].delay_s ==
        doctest::Approx((pi / 2) / (4 * pi * 500.0)).epsilon(1e-6));

  // fidelity claim holds against an independent resimulation
  const Operator u = simulate_unitary(sys, s.sequence);
  const Operator tar = target_unitary(GateLabel::sqr(1, pi / 2, pi / 2));
  CHECK(operator_fidelity(u, tar) == doctest::Approx(s.fidelity).epsilon(1e-12));
}

TEST_CASE("solve_sqr stays above 0.998 at J/delta = 0.1") {
  const SqrSolution s = solve_sqr(pair_with_ratio(0.1), 1, pi / 2, pi / 2);
  CHECK(s.fidelity >= 0.998);
}

TEST_CASE("solve_sqr near the zero-angle limit returns a near-identity") {
  const auto sys = pair_with_ratio(0.0);
  const SqrSolution s = solve_sqr(sys, 1, 1e-6, 0.0);
  CHECK(s.fidelity >= 0.999999);
  CHECK(s.sequence.genes[s.delay_slot].delay_s < 1e-9);
  const Operator u = simulate_unitary(sys, s.sequence);
  CHECK(operator_fidelity(u, Operator::Identity(4, 4)) >= 0.999999);
}

TEST_CASE("sqr_sequence phases: spin 2 swaps the first two pulse phases") {
  const auto sys = pair_with_ratio(0.05);
  const double phi = pi / 2;
  const PulseSequence s1 = sqr_sequence(1, pi / 2, phi, sys);
  const PulseSequence s2 = sqr_sequence(2, pi / 2, phi, sys);
  REQUIRE(s1.size() == 3);
  REQUIRE(s2.size() == 3);
  CHECK(s1.genes[0].phases_rad[0] == s2.genes[1].phases_rad[0]);
  CHECK(s1.genes[1].phases_rad[0] == s2.genes[0].phases_rad[0]);
  CHECK(s1.genes[2].phases_rad[0] == s2.genes[2].phases_rad[0]);
  // phi1/phi2 = phi -+ pi/2 for spin 1 (angles stored wrapped to [0, 2 pi))
  CHECK(s1.genes[0].phases_rad[0] == doctest::Approx(phi - pi / 2).epsilon(1e-12));
  CHECK(s1.genes[1].phases_rad[0] == doctest::Approx(phi + pi / 2).epsilon(1e-12));
  CHECK(s1.genes[2].phases_rad[0] == doctest::Approx(phi).epsilon(1e-12));
  // flip angles: pi/2, pi/2, theta/2
  CHECK(s1.genes[0].flips_rad[0] == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(s1.genes[1].flips_rad[0] == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(s1.genes[2].flips_rad[0] == doctest::Approx(pi / 4).epsilon(1e-12));
}

TEST_CASE("sqr_sequence discriminates the addressed spin") {
  const auto sys = pair_with_ratio(0.0);
  for (double theta : {pi / 2, pi}) {
    const PulseSequence seq = sqr_sequence(1, theta, pi / 2, sys);
    const Operator u = simulate_unitary(sys, seq);
    const Operator wrong = target_unitary(GateLabel::sqr(2, theta, pi / 2));
    CHECK(operator_fidelity(u, wrong) <= 0.8);
  }
}

TEST_CASE("sqr_sequence rejects a system without shift separation") {
  SpinSystem degenerate{2, {500.0, 500.0}, {{0.0, 0.0}, {0.0, 0.0}}, {0, 0}};
  CHECK_THROWS_AS(sqr_sequence(1, pi / 2, pi / 2, degenerate), std::runtime_error);
}

TEST_CASE("cnot_reference_angles returns the frozen working-point angles") {
  const auto a12 = cnot_reference_angles(GateLabel::Kind::Cnot12);
  CHECK(a12.theta == doctest::Approx(pi / 4));
  CHECK(a12.phi == doctest::Approx(pi / 2));
  const auto a1b2 = cnot_reference_angles(GateLabel::Kind::Cnot1b2);
  CHECK(a1b2.theta == doctest::Approx(pi / 4));
  CHECK(a1b2.phi == doctest::Approx(0.0));
  const auto a21 = cnot_reference_angles(GateLabel::Kind::Cnot21);
  CHECK(a21.theta == doctest::Approx(3 * pi / 4));
  CHECK(a21.phi == doctest::Approx(0.0));
  const auto a2b1 = cnot_reference_angles(GateLabel::Kind::Cnot2b1);
  CHECK(a2b1.theta == doctest::Approx(3 * pi / 4));
  CHECK(a2b1.phi == doctest::Approx(pi / 2));

  const auto bp = bell_reference_params(StateLabel::PsiPlus);
  CHECK(bp.phi1 == doctest::Approx(3 * pi / 4));
  CHECK(bp.phi2 == doctest::Approx(9 * pi / 8));
  CHECK(bp.phi3 == doctest::Approx(3 * pi / 4));
  CHECK(bp.d1_delta == doctest::Approx(1.0 / 16));
  CHECK(bp.d2_delta == doctest::Approx(0.0));
  const auto bs = bell_reference_params(StateLabel::PhiMinus);
  CHECK(bs.phi1 == doctest::Approx(0.0));
  CHECK(bs.phi2 == doctest::Approx(5 * pi / 8));
  CHECK(bs.phi3 == doctest::Approx(pi / 4));
  CHECK(bs.d1_delta == doctest::Approx(9.0 / 48));
  CHECK(bs.d2_delta == doctest::Approx(9.0 / 8));
  CHECK_THROWS_AS(bell_reference_params(StateLabel::Pps00), std::invalid_argument);
}

TEST_CASE("problem factories build the expected template shapes") {
  const auto sys = pair_with_ratio(0.1);

  SUBCASE("cnot: operator target, crushers forbidden, growable") {
    const Problem p = cnot_problem(sys, GateLabel::Kind::Cnot12);
    CHECK(p.kind == ObjectiveKind::Unitary);
    CHECK(p.tmpl.size() == 3);
    CHECK(p.tmpl.extensible);
    CHECK_FALSE(p.tmpl.allows_crushers());
    CHECK(free_crusher_slots(p.tmpl).empty());
  }

  SUBCASE("pps: 7 fixed flips with the refocusing pi in the middle") {
    const Problem p = pps_problem(sys, StateLabel::Pps00);
    CHECK(p.kind == ObjectiveKind::State);
    REQUIRE(p.tmpl.size() == 7);
    CHECK_FALSE(p.tmpl.extensible);
    for (int g = 0; g < 7; ++g) {
      REQUIRE(p.tmpl.genes[g].flips[0].has_value());
      CHECK(*p.tmpl.genes[g].flips[0] == (g == 3 ? pi : pi / 2));
      CHECK_FALSE(p.tmpl.genes[g].phases[0].has_value());
      CHECK_FALSE(p.tmpl.genes[g].delay.has_value());
      CHECK_FALSE(p.tmpl.genes[g].crusher.has_value());
    }
    CHECK((p.initial_state - target_state(StateLabel::Thermal)).norm() == 0.0);
  }

  SUBCASE("bell: 10 fixed pi/2 flips from thermal equilibrium") {
    const Problem p = bell_problem(sys, StateLabel::PhiMinus);
    REQUIRE(p.tmpl.size() == 10);
    for (int g = 0; g < 10; ++g) {
      REQUIRE(p.tmpl.genes[g].flips[0].has_value());
      CHECK(*p.tmpl.genes[g].flips[0] == pi / 2);
    }
    CHECK((p.target_state - target_state(StateLabel::PhiMinus)).norm() == 0.0);
    CHECK((p.initial_state - target_state(StateLabel::Thermal)).norm() == 0.0);

    const Problem pc = bell_problem(sys, StateLabel::PhiMinus, true);
    REQUIRE(pc.tmpl.size() == 11);
    CHECK(*pc.tmpl.genes[10].flips[0] == 0.0);
    REQUIRE(pc.tmpl.genes[10].crusher.has_value());
    CHECK(*pc.tmpl.genes[10].crusher);
  }
}

TEST_CASE("catalog_problem dispatches every name in catalog_names") {
  const auto sys = pair_with_ratio(0.05);
  for (const std::string& name : catalog_names()) {
    const Problem p = catalog_problem(name, sys);
    CHECK(p.name == name);
    CHECK_NOTHROW(p.validate());
  }
  CHECK(catalog_problem("sqr1", sys, pi / 4, 0.0).kind == ObjectiveKind::Unitary);
  CHECK(catalog_problem("bell-phi-minus", sys).kind == ObjectiveKind::State);
  CHECK_THROWS_AS(catalog_problem("nonsense", sys), std::invalid_argument);
}

TEST_CASE("singlet_readout") {
  const auto sys = pair_with_ratio(0.1);
  const DensityDeviation singlet = target_state(StateLabel::PhiMinus);

  SUBCASE("matches the quoted transform applied by an independent oracle") {
    const Operator gen_z = (pi / 4) * (oracles::spin_op('z', 1, 2) - oracles::spin_op('z', 2, 2));
    const Operator gen_x = (pi / 2) * (oracles::spin_op('x', 1, 2) + oracles::spin_op('x', 2, 2));
    const Operator u = oracles::expm_taylor(gen_x, 1.0) * oracles::expm_taylor(gen_z, 1.0);
    const DensityDeviation expect = u * singlet * u.adjoint();
    CHECK((singlet_readout(singlet, sys) - expect).cwiseAbs().maxCoeff() < 1e-13);
  }

  SUBCASE("is unitary: norm preserved, zero maps to zero") {
    const DensityDeviation out = singlet_readout(singlet, sys);
    CHECK(out.norm() == doctest::Approx(singlet.norm()).epsilon(1e-13));
    const DensityDeviation zero = DensityDeviation::Zero(4, 4);
    CHECK(singlet_readout(zero, sys).norm() == 0.0);
  }

  SUBCASE("produces observable single-quantum coherence from the singlet") {
    const DensityDeviation out = singlet_readout(singlet, sys);
    double sq = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (std::abs(oracles::coherence_order(r, c, 2)) == 1) sq += std::norm(out(r, c));
    CHECK(std::sqrt(sq) > 0.1);
  }
}

TEST_CASE("SweepGrid defaults cover the weak-coupling working region") {
  const SweepGrid g = SweepGrid::defaults();
  REQUIRE(g.ratios.size() == 11);
  CHECK(g.ratios.front() == 0.0);
  CHECK(g.ratios.back() == doctest::Approx(0.1));
  REQUIRE(g.thetas.size() == 6);
  CHECK(g.thetas.front() == doctest::Approx(pi / 8));
  CHECK(g.thetas.back() == doctest::Approx(pi));
  CHECK(g.delta_hz == 500.0);
  CHECK_NOTHROW(g.validate());

  SweepGrid empty;
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  SweepGrid bad = g;
  bad.ratios[0] = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fidelity_sweep: sqr fixed-template rows") {
  SweepGrid grid;
  grid.ratios = {0.0, 0.1};
  grid.thetas = {pi / 2};
  const SweepTable t = fidelity_sweep(SweepFamily::Sqr, SweepSolver::FixedTemplate, grid, {});
  REQUIRE(t.rows.size() == 2);
  for (const SweepRow& r : t.rows) {
    CHECK(r.theta == doctest::Approx(pi / 2));
    CHECK(r.fidelity >= 0.998);
    CHECK(r.converged);
  }
  CHECK(t.rows[0].j_over_delta == 0.0);
  CHECK(t.rows[1].j_over_delta == doctest::Approx(0.1));
}

TEST_CASE("fidelity_sweep: GA families are deterministic and flag convergence") {
  SweepGrid grid;
  grid.ratios = {0.1};
  grid.thetas = {pi / 2};  // ignored outside sqr
  GAConfig c;
  c.population_size = 30;
  c.generations = 150;
  c.cutoff = 0.9;
  c.restarts = 0;
  c.rng_seed = 17;

  const SweepTable a = fidelity_sweep(SweepFamily::Pps, SweepSolver::Ga, grid, c);
  REQUIRE(a.rows.size() == 1);
  CHECK(a.rows[0].theta == 0.0);
  CHECK(a.rows[0].fidelity > 0.0);

  const SweepTable b = fidelity_sweep(SweepFamily::Pps, SweepSolver::Ga, grid, c);
  CHECK(a.rows[0].fidelity == b.rows[0].fidelity);
  CHECK(a.rows[0].converged == b.rows[0].converged);

  CHECK_THROWS_AS(fidelity_sweep(SweepFamily::Cnot, SweepSolver::FixedTemplate, grid, c),
                  std::invalid_argument);
}
