#pragma once

#include <random>

#include "deph/dephasing.hpp"
#include "deph/qmat.hpp"

namespace deph::test {

inline ComplexMatrix random_hermitian(Index d, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

/// Random density matrix of the given rank: sum of `rank` random pure states
/// with random weights.
inline ComplexMatrix random_state(Index d, Index rank, Rng& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  double total = 0.0;
  for (Index k = 0; k < rank; ++k) {
    const ComplexVector v = qmat::random_pure_state(d, rng);
    const double w = u(rng);
    total += w;
    rho += w * v * v.adjoint();
  }
  return rho / total;
}

inline ComplexMatrix ket0_state(Index d) {
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return rho;
}

/// exp(-i h t) from a scaled Taylor series with repeated squaring.
inline ComplexMatrix taylor_expm(const ComplexMatrix& h, double t) {
  const double norm = h.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const ComplexMatrix a = Complex(0.0, -t / std::pow(2.0, squarings)) * h;
  ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace deph::test
