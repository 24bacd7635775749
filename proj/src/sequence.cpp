#include "gapulse/sequence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool angle_in_range(double a) { return a >= 0.0 && a < kTwoPi; }

}  // namespace

bool PulseGene::is_zero_effect() const {
  if (delay_s != 0.0 || crusher_after) return false;
  for (double f : flips_rad)
    if (f != 0.0) return false;
  return true;
}

void PulseSequence::validate() const {
  if (genes.empty()) throw std::invalid_argument("PulseSequence: at least one gene required");
  if (n_channels < 1) throw std::invalid_argument("PulseSequence: n_channels must be >= 1");
  for (const PulseGene& g : genes) {
    if (static_cast<int>(g.flips_rad.size()) != n_channels ||
        static_cast<int>(g.phases_rad.size()) != n_channels)
      throw std::invalid_argument("PulseSequence: gene channel count mismatch");
    for (double f : g.flips_rad)
      if (!angle_in_range(f)) throw std::invalid_argument("PulseSequence: flip outside [0, 2pi)");
    for (double p : g.phases_rad)
      if (!angle_in_range(p)) throw std::invalid_argument("PulseSequence: phase outside [0, 2pi)");
    if (g.delay_s < 0.0) throw std::invalid_argument("PulseSequence: negative delay");
  }
}

void SequenceTemplate::validate() const {
  if (genes.empty()) throw std::invalid_argument("SequenceTemplate: at least one gene required");
  if (n_channels < 1) throw std::invalid_argument("SequenceTemplate: n_channels must be >= 1");
  for (const GeneTemplate& g : genes) {
    if (static_cast<int>(g.flips.size()) != n_channels ||
        static_cast<int>(g.phases.size()) != n_channels)
      throw std::invalid_argument("SequenceTemplate: gene channel count mismatch");
    for (const auto& f : g.flips)
      if (f && !angle_in_range(*f))
        throw std::invalid_argument("SequenceTemplate: fixed flip outside [0, 2pi)");
    for (const auto& p : g.phases)
      if (p && !angle_in_range(*p))
        throw std::invalid_argument("SequenceTemplate: fixed phase outside [0, 2pi)");
    if (g.delay && *g.delay < 0.0)
      throw std::invalid_argument("SequenceTemplate: fixed delay negative");
  }
}

bool SequenceTemplate::allows_crushers() const {
  for (const GeneTemplate& g : genes)
    if (!g.crusher || *g.crusher) return true;
  return false;
}

SequenceTemplate SequenceTemplate::free_form(int n_channels, int m, bool free_crushers) {
  SequenceTemplate t;
  t.n_channels = n_channels;
  t.extensible = true;
  GeneTemplate g;
  g.flips.assign(n_channels, std::nullopt);
  g.phases.assign(n_channels, std::nullopt);
  g.delay = std::nullopt;
  g.crusher = free_crushers ? std::optional<bool>{} : std::optional<bool>{false};
  t.genes.assign(m, g);
  t.validate();
  return t;
}

std::vector<ParamSlot> free_slots(const SequenceTemplate& t) {
  std::vector<ParamSlot> slots;
  for (int gi = 0; gi < t.size(); ++gi) {
    const GeneTemplate& g = t.genes[gi];
    for (int c = 0; c < t.n_channels; ++c)
      if (!g.flips[c]) slots.push_back({ParamSlot::Kind::Flip, gi, c});
    for (int c = 0; c < t.n_channels; ++c)
      if (!g.phases[c]) slots.push_back({ParamSlot::Kind::Phase, gi, c});
    if (!g.delay) slots.push_back({ParamSlot::Kind::Delay, gi, 0});
  }
  return slots;
}

std::vector<int> free_crusher_slots(const SequenceTemplate& t) {
  std::vector<int> slots;
  for (int gi = 0; gi < t.size(); ++gi)
    if (!t.genes[gi].crusher) slots.push_back(gi);
  return slots;
}

PulseSequence instantiate(const SequenceTemplate& t, const std::vector<double>& params,
                          const std::vector<bool>& crushers) {
  t.validate();
  const std::vector<ParamSlot> slots = free_slots(t);
  const std::vector<int> cslots = free_crusher_slots(t);
  if (params.size() != slots.size())
    throw std::invalid_argument("instantiate: parameter count mismatch");
  if (crushers.size() != cslots.size())
    throw std::invalid_argument("instantiate: crusher count mismatch");

  PulseSequence seq;
  seq.n_channels = t.n_channels;
  seq.genes.resize(t.size());
  for (int gi = 0; gi < t.size(); ++gi) {
    PulseGene& g = seq.genes[gi];
    const GeneTemplate& gt = t.genes[gi];
    g.flips_rad.assign(t.n_channels, 0.0);
    g.phases_rad.assign(t.n_channels, 0.0);
    for (int c = 0; c < t.n_channels; ++c) {
      if (gt.flips[c]) g.flips_rad[c] = *gt.flips[c];
      if (gt.phases[c]) g.phases_rad[c] = *gt.phases[c];
    }
    if (gt.delay) g.delay_s = *gt.delay;
    if (gt.crusher) g.crusher_after = *gt.crusher;
  }
  for (size_t i = 0; i < slots.size(); ++i) {
    const ParamSlot& s = slots[i];
    PulseGene& g = seq.genes[s.gene];
    switch (s.kind) {
      case ParamSlot::Kind::Flip: g.flips_rad[s.channel] = params[i]; break;
      case ParamSlot::Kind::Phase: g.phases_rad[s.channel] = params[i]; break;
      case ParamSlot::Kind::Delay: g.delay_s = params[i]; break;
    }
  }
  for (size_t i = 0; i < cslots.size(); ++i) seq.genes[cslots[i]].crusher_after = crushers[i];
  seq.validate();
  return seq;
}

std::pair<std::vector<double>, std::vector<bool>> extract_params(const SequenceTemplate& t,
                                                                 const PulseSequence& seq) {
  if (seq.size() != t.size() || seq.n_channels != t.n_channels)
    throw std::invalid_argument("extract_params: sequence does not match template shape");
  std::vector<double> params;
  std::vector<bool> crushers;
  for (const ParamSlot& s : free_slots(t)) {
    const PulseGene& g = seq.genes[s.gene];
    switch (s.kind) {
      case ParamSlot::Kind::Flip: params.push_back(g.flips_rad[s.channel]); break;
      case ParamSlot::Kind::Phase: params.push_back(g.phases_rad[s.channel]); break;
      case ParamSlot::Kind::Delay: params.push_back(g.delay_s); break;
    }
  }
  for (int gi : free_crusher_slots(t)) crushers.push_back(seq.genes[gi].crusher_after);
  return {std::move(params), std::move(crushers)};
}

void Problem::validate() const {
  system.validate();
  tmpl.validate();
  if (tmpl.n_channels != system.n_channels())
    throw std::invalid_argument("Problem: template channel count does not match system");
  const int d = system.dim();
  if (kind == ObjectiveKind::Unitary) {
    if (tmpl.allows_crushers())
      throw std::invalid_argument("Problem: crushers are not unitary; forbidden for operator targets");
    if (target_unitary.rows() != d || target_unitary.cols() != d)
      throw std::invalid_argument("Problem: target unitary dimension mismatch");
    if (!is_unitary(target_unitary))
      throw std::invalid_argument("Problem: target operator is not unitary");
  } else {
    if (initial_state.rows() != d || initial_state.cols() != d ||
        target_state.rows() != d || target_state.cols() != d)
      throw std::invalid_argument("Problem: state dimension mismatch");
    if (!is_hermitian(initial_state) || !is_hermitian(target_state))
      throw std::invalid_argument("Problem: state deviations must be Hermitian");
    if (target_state.norm() == 0.0)
      throw std::invalid_argument("Problem: target state deviation has zero norm");
  }
}

Problem make_unitary_problem(std::string name, SpinSystem system, Operator target,
                             SequenceTemplate tmpl) {
  Problem p;
  p.name = std::move(name);
  p.system = std::move(system);
  p.kind = ObjectiveKind::Unitary;
  p.target_unitary = std::move(target);
  p.tmpl = std::move(tmpl);
  p.validate();
  return p;
}

Problem make_state_problem(std::string name, SpinSystem system, DensityDeviation initial,
                           DensityDeviation target, SequenceTemplate tmpl) {
  Problem p;
  p.name = std::move(name);
  p.system = std::move(system);
  p.kind = ObjectiveKind::State;
  p.initial_state = std::move(initial);
  p.target_state = std::move(target);
  p.tmpl = std::move(tmpl);
  p.validate();
  return p;
}

}  // namespace gapulse
