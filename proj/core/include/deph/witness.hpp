#pragma once

// System-environment correlation certificates for pure-dephasing channels.
//
// With R_ij = V_i rho_E V_j^dagger and Y_ij = V_i V_j^dagger:
//   zero discord (E -> S):  [R_ij, R_kl] = 0 for all i, j, k, l
//   qubit-like:             R_ii = R_jj = R for all i, j
//   qutrit-like (corrected): R [Y_ij, Y_kl] R = 0 for all i, j, k, l
// Zero discord holds iff both separability classes hold. Non-mixed-unitarity
// is quantified by Q_A = log d_S - E_A of the Choi state; Q_A > 0 certifies
// entanglement for some initial system state.

#include <optional>
#include <vector>

#include "deph/dephasing.hpp"
#include "deph/eoa.hpp"
#include "deph/qmat.hpp"

namespace deph::witness {

inline constexpr double kCriteriaTol = 1e-8;

struct CriterionResult {
  bool pass = false;
  double max_violation = 0.0;  // operator norm
};

struct QubitLikeResult : CriterionResult {
  /// Common V_i rho_E V_i^dagger when passing; the i = 0 branch otherwise.
  ComplexMatrix r;
};

struct QutritLikeResult : CriterionResult {
  /// True when R was taken from branch 0 because the qubit-like check failed.
  bool used_branch0_r = false;
};

struct CriteriaReport {
  CriterionResult zero_discord;
  CriterionResult qubit_like;
  QutritLikeResult qutrit_like;
  double tolerance = kCriteriaTol;

  bool separable() const noexcept { return qubit_like.pass && qutrit_like.pass; }
};

CriterionResult zero_discord_check(const dephasing::PureDephasingChannel& ch, double tol = kCriteriaTol);
QubitLikeResult qubit_like_check(const dephasing::PureDephasingChannel& ch, double tol = kCriteriaTol);
QutritLikeResult qutrit_like_check(const dephasing::PureDephasingChannel& ch, double tol = kCriteriaTol);
CriteriaReport check_criteria(const dephasing::PureDephasingChannel& ch, double tol = kCriteriaTol);

/// One 3x3 principal minor of rho_SE^{T_S} for a qutrit system, taken on the
/// rows (0, e_nm), (1, e_nm), (2, e_nm') where {e_nm} diagonalizes Y_01 inside
/// the n-th eigenspace of R.
struct PrincipalMinor {
  Index block = 0;
  Index m = 0;
  Index m_prime = 0;
  double q = 0.0;        // eigenvalue of R on the block
  double theta_m = 0.0;  // arg of the Y_01 eigenvalue on e_nm
  double theta_m_prime = 0.0;
  Complex x;  // <e_nm'| Y_02 |e_nm>
  double value = 0.0;
};

/// Throws DimensionMismatch unless d_S = 3 and `amplitudes` has 3 entries.
/// Eigenvalues of R below `tol` form the orthogonal complement and are skipped.
std::vector<PrincipalMinor> qutrit_principal_minors(const dephasing::PureDephasingChannel& ch,
                                                    const ComplexVector& amplitudes, double tol = 1e-10);

/// (||rho^{T_A}||_1 - 1) / 2. Throws DimensionMismatch or NotAState.
double negativity(const ComplexMatrix& rho, qmat::BipartiteDims dims);

/// Negativity of the pure state sum_ij c_ij |i>|j> from its Schmidt
/// coefficients. `coefficients` must have unit Frobenius norm.
double negativity_pure(const ComplexMatrix& coefficients);

struct MuBaselineStats {
  Index d_s = 0;
  Index samples = 0;
  double max_q_a = 0.0;
  double mean_q_a = 0.0;
};

struct WitnessReport {
  double q_a = 0.0;
  double e_a = 0.0;
  double e_a_max = 0.0;
  double log_base = 2.0;
  std::optional<double> negativity;
  std::optional<CriteriaReport> criteria;
  EoAResult eoa;
  std::optional<MuBaselineStats> baseline;
};

/// Q_A = log d_S - E_A. An under-converged ascent over-reports Q_A; the
/// embedded EoAResult carries the restart diagnostics.
WitnessReport q_a(const dephasing::DephasingFactorMatrix& phi, const EoAOptions& opts = {});

/// Full report for a channel: criteria, Q_A and, if `rho_s` is given, the
/// negativity of the evolved joint state.
WitnessReport analyze_channel(const dephasing::PureDephasingChannel& ch, const EoAOptions& opts = {},
                              double tol = kCriteriaTol, const std::optional<ComplexMatrix>& rho_s = std::nullopt);

/// Random mixed-unitary dephasing matrix: sum_n p_n u_n u_n^dagger with
/// Dirichlet(1) weights and uniform phase vectors u_n = (e^{i a_n0}, ...).
dephasing::DephasingFactorMatrix random_mu_dephasing(Index d_s, Index terms, Rng& rng);

/// Q_A over random mixed-unitary channels (each exactly MU, so the result
/// measures the optimizer floor).
MuBaselineStats mu_baseline(Index d_s, Index n_samples, RngSeed seed, const EoAOptions& opts = {});

}  // namespace deph::witness
