#pragma once

#include "gapulse/sequence.hpp"

#include <string>
#include <vector>

namespace gapulse {

/// Rounds to 12 significant decimal digits, the sequence-file precision.
/// Optimizer outputs are snapped before their final fidelity evaluation so
/// the serialized file reproduces the reported number bit for bit.
double snap12(double v);

/// snap12 applied to every flip, phase, and delay.
PulseSequence snap_sequence(const PulseSequence& seq);

/// JSON sequence file:
///   { "n_channels": int, "channel_map": [int per spin],
///     "genes": [ { "flips": [rad], "phases": [rad],
///                  "delay_s": s, "crusher": bool } ] }
/// channel_map records which channel drives each spin; it is carried as
/// metadata and not part of the PulseSequence itself.
std::string sequence_to_json(const PulseSequence& seq, const std::vector<int>& channel_map);

/// Parses a sequence file. Throws std::runtime_error naming the missing or
/// ill-typed field; the result always passes PulseSequence::validate().
PulseSequence sequence_from_json(const std::string& text);

/// File helpers (throw std::runtime_error on I/O failure).
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace gapulse
