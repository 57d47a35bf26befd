#pragma once

// Pure-dephasing channels generated by controlled unitaries
//   U_SE = sum_i |i><i| (x) V_i
// acting on rho_S (x) rho_E. The reduced dynamics is fully described by the
// dephasing-factor matrix Phi[i][j] = Tr(V_i rho_E V_j^dagger), which acts on
// the system entrywise: rho'_S[i][j] = Phi[i][j] * rho_S[i][j].

#include <vector>

#include "deph/qmat.hpp"

namespace deph::dephasing {

/// Tolerances used when validating channel inputs.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kStateTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

/// Hermitian PSD matrix with unit diagonal.
class DephasingFactorMatrix {
 public:
  /// Validates Hermiticity, unit diagonal, |phi_ij| <= 1 and PSD (min
  /// eigenvalue >= -psd_tol). Throws NotAState / NonSquare on failure.
  explicit DephasingFactorMatrix(ComplexMatrix phi, double psd_tol = kPsdTol);

  Index dim() const noexcept { return phi_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return phi_; }
  Complex operator()(Index i, Index j) const { return phi_(i, j); }

 private:
  ComplexMatrix phi_;
};

class PureDephasingChannel {
 public:
  Index dim_system() const noexcept { return static_cast<Index>(unitaries_.size()); }
  Index dim_env() const noexcept { return env_state_.rows(); }
  const std::vector<ComplexMatrix>& unitaries() const noexcept { return unitaries_; }
  const ComplexMatrix& env_state() const noexcept { return env_state_; }

  /// V_i rho_E V_j^dagger.
  ComplexMatrix conditional_env(Index i, Index j) const;

 private:
  friend PureDephasingChannel build_channel(std::vector<ComplexMatrix> unitaries, ComplexMatrix env_state);
  PureDephasingChannel(std::vector<ComplexMatrix> unitaries, ComplexMatrix env_state);

  std::vector<ComplexMatrix> unitaries_;
  ComplexMatrix env_state_;
};

/// Throws NonUnitary (with the offending index), NotAState or DimensionMismatch.
PureDephasingChannel build_channel(std::vector<ComplexMatrix> unitaries, ComplexMatrix env_state);

DephasingFactorMatrix dephasing_matrix(const PureDephasingChannel& ch);

/// sum_ij rho_S[i][j] |i><j| (x) V_i rho_E V_j^dagger, system factor first.
ComplexMatrix evolve_joint(const PureDephasingChannel& ch, const ComplexMatrix& rho_s);

/// Entrywise product Phi o rho_S.
ComplexMatrix apply_channel(const DephasingFactorMatrix& phi, const ComplexMatrix& rho_s);

/// Choi state compressed onto span{|mm>}: Phi / d_S.
ComplexMatrix choi_state(const DephasingFactorMatrix& phi);

/// Full d_S^2 x d_S^2 Choi matrix (reference factor first). Only meant for
/// cross-checking the compressed form.
ComplexMatrix choi_embedding(const DephasingFactorMatrix& phi);

/// Uniform superposition sum_i |i> / sqrt(d), as a density matrix.
ComplexMatrix maximally_coherent_state(Index d);

}  // namespace deph::dephasing
