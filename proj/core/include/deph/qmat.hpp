#pragma once

// Dense complex linear algebra used throughout the library: Kronecker
// products, Hermitian spectral decomposition, partial trace/transpose,
// entropies and Haar sampling. Matrices are plain Eigen::MatrixXcd values.

#include <complex>
#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

namespace deph {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Seed for every stochastic routine. Per-task streams are derived by XOR with
/// the task index so that parallel work stays reproducible.
struct RngSeed {
  std::uint64_t value = 0;

  constexpr RngSeed derive(std::uint64_t index) const noexcept { return RngSeed{value ^ index}; }
};

using Rng = std::mt19937_64;

inline Rng make_rng(RngSeed seed) { return Rng(seed.value); }

namespace qmat {

/// Relative Hermiticity tolerance: max|A - A^dagger| <= kHermitianTol * max|A|.
inline constexpr double kHermitianTol = 1e-12;

enum class Subsystem { A, B };

struct BipartiteDims {
  Index a = 0;
  Index b = 0;
};

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // column k pairs with values[k]
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a);
double hermiticity_deviation(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTol);

/// Max entrywise deviation of U U^dagger from the identity.
double unitarity_deviation(const ComplexMatrix& u);

/// Throws NonHermitianInput when `a` fails the relative Hermiticity check.
HermitianEigen hermitian_eig(const ComplexMatrix& a);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Sum of singular values. Throws NonSquare.
double trace_norm(const ComplexMatrix& a);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Subsystem subsystem);
ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Subsystem traced);

/// exp(-i h t) for Hermitian h, via the spectral decomposition.
ComplexMatrix matexp_hermitian(const ComplexMatrix& h, double t);

/// Checks Hermiticity, unit trace and positivity (min eigenvalue >= -tol).
/// Throws NotAState with a description of the first failed condition.
void validate_state(const ComplexMatrix& rho, double tol = 1e-9);

/// -sum p log p with 0 log 0 = 0. Throws NotAState for inputs that are not
/// density matrices within 1e-9.
double von_neumann_entropy(const ComplexMatrix& rho, double log_base = 2.0);

/// Shannon entropy of a probability vector (entries are used as-is).
double shannon_entropy(std::span<const double> probabilities, double log_base = 2.0);

ComplexMatrix haar_random_unitary(Index d, Rng& rng);
ComplexMatrix haar_random_unitary(Index d, RngSeed seed);
ComplexVector random_pure_state(Index d, Rng& rng);
ComplexVector random_pure_state(Index d, RngSeed seed);

/// Pauli matrices; `which` is one of 'I', 'X', 'Y', 'Z'.
ComplexMatrix pauli(char which);

}  // namespace qmat
}  // namespace deph
