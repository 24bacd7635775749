#include "gapulse/spin_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapulse {

int SpinSystem::n_channels() const {
  int n = 0;
  for (int c : channel_of_spin) n = std::max(n, c + 1);
  return n;
}

int SpinSystem::dim() const { return 1 << n_spins; }

double SpinSystem::weak_coupling_ratio() const {
  double jmax = 0.0;
  for (int i = 0; i < n_spins; ++i)
    for (int k = i + 1; k < n_spins; ++k) jmax = std::max(jmax, std::abs(j_hz[i][k]));
  if (jmax == 0.0) return 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_spins; ++i)
    for (int k = i + 1; k < n_spins; ++k) {
      const double d = std::abs(shifts_hz[i] - shifts_hz[k]);
      if (d > 0.0) dmin = std::min(dmin, d);
    }
  if (!std::isfinite(dmin)) return std::numeric_limits<double>::infinity();
  return jmax / dmin;
}

void SpinSystem::validate() const {
  if (n_spins < 1) throw std::invalid_argument("SpinSystem: n_spins must be >= 1");
  if (static_cast<int>(shifts_hz.size()) != n_spins)
    throw std::invalid_argument("SpinSystem: shifts_hz size mismatch");
  if (static_cast<int>(j_hz.size()) != n_spins)
    throw std::invalid_argument("SpinSystem: j_hz row count mismatch");
  for (int i = 0; i < n_spins; ++i) {
    if (static_cast<int>(j_hz[i].size()) != n_spins)
      throw std::invalid_argument("SpinSystem: j_hz column count mismatch");
    if (j_hz[i][i] != 0.0) throw std::invalid_argument("SpinSystem: j_hz diagonal must be zero");
    for (int k = 0; k < n_spins; ++k)
      if (j_hz[i][k] != j_hz[k][i])
        throw std::invalid_argument("SpinSystem: j_hz must be symmetric");
  }
  if (static_cast<int>(channel_of_spin.size()) != n_spins)
    throw std::invalid_argument("SpinSystem: channel_of_spin size mismatch");
  const int nc = n_channels();
  std::vector<bool> seen(nc, false);
  for (int c : channel_of_spin) {
    if (c < 0) throw std::invalid_argument("SpinSystem: negative channel index");
    seen[c] = true;
  }
  for (int c = 0; c < nc; ++c)
    if (!seen[c]) throw std::invalid_argument("SpinSystem: channel indices must be contiguous");
}

SpinSystem SpinSystem::homonuclear_pair(double delta_hz, double j_hz) {
  SpinSystem sys;
  sys.n_spins = 2;
  sys.shifts_hz = {delta_hz, -delta_hz};
  sys.j_hz = {{0.0, j_hz}, {j_hz, 0.0}};
  sys.channel_of_spin = {0, 0};
  sys.validate();
  return sys;
}

}  // namespace gapulse
