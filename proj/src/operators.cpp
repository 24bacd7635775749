#include "gapulse/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd half_pauli(Axis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case Axis::X: m << 0.0, 0.5, 0.5, 0.0; break;
    case Axis::Y: m << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0; break;
    case Axis::Z: m << 0.5, 0.0, 0.0, -0.5; break;
  }
  return m;
}

// Single-spin rotation exp(-i theta (cos(phi) Ix + sin(phi) Iy)) in closed form.
Eigen::Matrix2cd axial_rotation(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd r;
  r << c, -kI * std::exp(-kI * phi) * s, -kI * std::exp(kI * phi) * s, c;
  return r;
}

}  // namespace

Operator spin_operator(Axis axis, int spin_index, int n_spins) {
  if (n_spins < 1) throw std::invalid_argument("spin_operator: n_spins must be >= 1");
  if (spin_index < 1 || spin_index > n_spins)
    throw std::out_of_range("spin_operator: spin_index out of range");
  Operator result = Operator::Identity(1, 1);
  for (int k = 1; k <= n_spins; ++k) {
    const Eigen::Matrix2cd factor =
        (k == spin_index) ? half_pauli(axis) : Eigen::Matrix2cd::Identity();
    result = Eigen::kroneckerProduct(result, factor).eval();
  }
  return result;
}

Operator build_hamiltonian(const SpinSystem& system) {
  system.validate();
  const int n = system.n_spins;
  const double two_pi = 2.0 * std::numbers::pi;
  Operator h = Operator::Zero(system.dim(), system.dim());
  for (int k = 1; k <= n; ++k)
    h += two_pi * system.shifts_hz[k - 1] * spin_operator(Axis::Z, k, n);
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      h += two_pi * system.j_hz[k - 1][l - 1] *
           (spin_operator(Axis::Z, k, n) * spin_operator(Axis::Z, l, n));
  return h;
}

Operator matrix_exponential(const Operator& hamiltonian, double t_s) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  const double scale = std::max(1.0, hamiltonian.norm());
  if ((hamiltonian - hamiltonian.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("matrix_exponential: input must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(hamiltonian);
  const Eigen::VectorXcd phases =
      (-kI * t_s * es.eigenvalues().cast<Complex>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator pulse_propagator(const SpinSystem& system, const std::vector<double>& flips_rad,
                          const std::vector<double>& phases_rad) {
  const int nc = system.n_channels();
  if (static_cast<int>(flips_rad.size()) != nc || static_cast<int>(phases_rad.size()) != nc)
    throw std::invalid_argument("pulse_propagator: one (flip, phase) pair per channel required");
  // Per-spin generators commute, so the propagator factors into a tensor
  // product of single-spin rotations.
  Operator u = Operator::Identity(1, 1);
  for (int spin = 0; spin < system.n_spins; ++spin) {
    const int ch = system.channel_of_spin[spin];
    u = Eigen::kroneckerProduct(u, axial_rotation(flips_rad[ch], phases_rad[ch])).eval();
  }
  return u;
}

Operator delay_propagator(const SpinSystem& system, double delay_s) {
  if (delay_s < 0.0) throw std::invalid_argument("delay_propagator: delay must be >= 0");
  // The weak-coupling Hamiltonian is diagonal; exponentiate elementwise.
  const Operator h = build_hamiltonian(system);
  const int d = system.dim();
  Operator u = Operator::Zero(d, d);
  for (int b = 0; b < d; ++b) u(b, b) = std::exp(-kI * h(b, b).real() * delay_s);
  return u;
}

std::vector<int> total_quantum_numbers(int dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("total_quantum_numbers: dim must be a power of two");
  int n_spins = 0;
  while ((1 << n_spins) < dim) ++n_spins;
  std::vector<int> m(dim);
  for (int b = 0; b < dim; ++b) {
    int ones = 0;
    for (int k = 0; k < n_spins; ++k) ones += (b >> k) & 1;
    m[b] = n_spins - 2 * ones;  // 2*M_b: +1 per |0>, -1 per |1>
  }
  return m;
}

DensityDeviation apply_crusher(const DensityDeviation& rho) {
  const int d = static_cast<int>(rho.rows());
  const std::vector<int> m = total_quantum_numbers(d);
  DensityDeviation out = rho;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (m[r] != m[c]) out(r, c) = 0.0;
  return out;
}

Eigen::VectorXd diagonal_populations(const DensityDeviation& rho) {
  return rho.diagonal().real();
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).norm() <= tol;
}

}  // namespace gapulse
