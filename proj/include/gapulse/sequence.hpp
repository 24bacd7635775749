#pragma once

#include "gapulse/operators.hpp"
#include "gapulse/spin_system.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gapulse {

/// One pulse+delay block: a hard pulse (per-channel flip/phase), free
/// evolution, and an optional gradient crusher at the end.
struct PulseGene {
  std::vector<double> flips_rad;   // wrapped into [0, 2*pi)
  std::vector<double> phases_rad;  // wrapped into [0, 2*pi)
  double delay_s = 0.0;
  bool crusher_after = false;

  /// True when the gene does nothing: zero flips, zero delay, no crusher.
  bool is_zero_effect() const;
};

struct PulseSequence {
  int n_channels = 1;
  std::vector<PulseGene> genes;

  int size() const { return static_cast<int>(genes.size()); }

  /// Throws std::invalid_argument on: empty gene list, per-gene channel
  /// count mismatch, angle outside [0, 2*pi), negative delay.
  void validate() const;
};

/// Per-gene constraint record; nullopt marks a parameter the optimizer may
/// evolve, a value pins it.
struct GeneTemplate {
  std::vector<std::optional<double>> flips;
  std::vector<std::optional<double>> phases;
  std::optional<double> delay;
  std::optional<bool> crusher = false;  // fixed off unless stated otherwise
};

struct SequenceTemplate {
  int n_channels = 1;
  std::vector<GeneTemplate> genes;
  bool extensible = false;  // solver may append fully free genes on restarts

  int size() const { return static_cast<int>(genes.size()); }
  void validate() const;
  bool allows_crushers() const;

  /// Every parameter free; crushers free when `free_crushers` is set.
  static SequenceTemplate free_form(int n_channels, int m, bool free_crushers);
};

/// Position of one free scalar parameter within a template.
struct ParamSlot {
  enum class Kind { Flip, Phase, Delay };
  Kind kind;
  int gene;
  int channel;  // meaningless for Kind::Delay
};

/// Free scalar slots in gene order (flips, phases, then delay per gene).
std::vector<ParamSlot> free_slots(const SequenceTemplate& t);

/// Gene indices whose crusher flag is free.
std::vector<int> free_crusher_slots(const SequenceTemplate& t);

/// Fills a template with values: fixed entries from the template, free
/// entries consumed from `params` / `crushers` in slot order.
PulseSequence instantiate(const SequenceTemplate& t, const std::vector<double>& params,
                          const std::vector<bool>& crushers);

/// Inverse of instantiate for a sequence that matches the template shape.
std::pair<std::vector<double>, std::vector<bool>> extract_params(const SequenceTemplate& t,
                                                                 const PulseSequence& seq);

enum class ObjectiveKind { Unitary, State };

/// A search problem: the spin system, the target (unitary or state pair),
/// and the template constraining candidate sequences.
struct Problem {
  std::string name;
  SpinSystem system;
  ObjectiveKind kind = ObjectiveKind::Unitary;
  Operator target_unitary;         // Unitary objective
  DensityDeviation initial_state;  // State objective
  DensityDeviation target_state;   // State objective
  SequenceTemplate tmpl;

  /// Throws std::invalid_argument on inconsistency; unitary objectives
  /// reject templates that can produce a crusher (not a unitary operation).
  void validate() const;
};

Problem make_unitary_problem(std::string name, SpinSystem system, Operator target,
                             SequenceTemplate tmpl);
Problem make_state_problem(std::string name, SpinSystem system, DensityDeviation initial,
                           DensityDeviation target, SequenceTemplate tmpl);

}  // namespace gapulse
