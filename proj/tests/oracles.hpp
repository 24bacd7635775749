#pragma once

// Test-side oracles. These deliberately avoid the implementation routes in
// src/: the matrix exponential uses scaling-and-squaring with a Taylor
// series instead of an eigendecomposition, and the spin operators are built
// from explicit matrix-element formulas instead of Kronecker chains.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// exp(-i H t) via scaling-and-squaring on the Taylor series of exp(A).
inline Matrix expm_taylor(const Matrix& h, double t_s) {
  Matrix a = Complex(0.0, -1.0) * t_s * h;
  int squarings = 0;
  while (a.norm() > 0.5) {
    a *= 0.5;
    ++squarings;
  }
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  for (int k = 1; k <= 30; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
    if (term.norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

// Single-spin operator on n_spins spins from matrix elements. Spin 1 is the
// leftmost factor, i.e. the most significant bit of the basis index, and
// bit value 0 means m = +1/2.
inline Matrix spin_op(char axis, int spin_index, int n_spins) {
  const int dim = 1 << n_spins;
  const int bit = n_spins - spin_index;  // bit position of this spin
  const int mask = 1 << bit;
  Matrix m = Matrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const bool down = (b & mask) != 0;
    switch (axis) {
      case 'z': m(b, b) = down ? -0.5 : 0.5; break;
      case 'x': m(b ^ mask, b) = 0.5; break;
      case 'y': m(b ^ mask, b) = down ? Complex(0.0, -0.5) : Complex(0.0, 0.5); break;
    }
  }
  return m;
}

// Twice the total magnetic quantum number of basis state b (integer-valued).
inline std::vector<int> two_m_values(int n_spins) {
  const int dim = 1 << n_spins;
  Matrix iz_total = Matrix::Zero(dim, dim);
  for (int k = 1; k <= n_spins; ++k) iz_total += spin_op('z', k, n_spins);
  std::vector<int> two_m(dim);
  for (int b = 0; b < dim; ++b)
    two_m[b] = static_cast<int>(std::lround(2.0 * iz_total(b, b).real()));
  return two_m;
}

// Coherence order of matrix element (r, c) in units of 1 (integer for any
// spin-1/2 system).
inline int coherence_order(int r, int c, int n_spins) {
  const std::vector<int> two_m = two_m_values(n_spins);
  return (two_m[r] - two_m[c]) / 2;
}

inline Matrix random_hermitian(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint()).eval();
}

inline Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    q.col(c) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

// Random traceless Hermitian deviation.
inline Matrix random_deviation(int dim, std::mt19937_64& rng, double scale = 1.0) {
  Matrix m = random_hermitian(dim, rng, scale);
  m -= (m.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return m;
}

}  // namespace oracles
