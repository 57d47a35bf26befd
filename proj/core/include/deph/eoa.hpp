#pragma once

// Entanglement of assistance of dephasing-channel Choi states.
//
// The Choi state of a dephasing channel lives on span{|mm>} and equals
// Phi / d_S there. Writing its support as B = U_r diag(sqrt(lambda)), every
// K-element pure-state decomposition is psi~_i = B w_i, where the rows w_i of
// a K x r isometry W (W^T conj(W) = I) parameterize the ensemble. Because each
// psi~_i is maximally correlated, the entanglement of member i is the Shannon
// entropy of |psi~_im|^2 / p_i. The average entropy
//
//   F(W) = sum_i [ p_i log p_i - sum_m a_im log a_im ],  a_im = |psi~_im|^2,
//
// is maximized by Riemannian gradient ascent on the Stiefel manifold with a
// QR retraction, Barzilai-Borwein trial steps and Armijo backtracking.

#include <cstdint>
#include <vector>

#include "deph/dephasing.hpp"
#include "deph/qmat.hpp"

namespace deph::witness {

struct EoAOptions {
  int restarts = 16;
  RngSeed seed{0};
  double log_base = 2.0;
  int max_iterations = 200000;
  double gradient_tol = 1e-10;
  double relative_tol = 1e-13;
  int stall_window = 50;
  double rank_cutoff = 1e-12;
  /// 0 selects max(4 r^2, d_S). r^2 members suffice in principle, but the
  /// landscape at K = r^2 has spurious local maxima.
  Index ensemble_size = 0;
  /// Worker threads used for independent restarts.
  unsigned threads = 1;
};

/// Pure-state decomposition of the compressed Choi state. vectors[i] holds
/// the coefficients of member i on |mm>, normalized.
struct Decomposition {
  std::vector<double> weights;
  std::vector<ComplexVector> vectors;

  ComplexMatrix reconstruct() const;
};

struct RestartTrace {
  int restart = 0;
  double objective = 0.0;  // in units of log_base
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool monotone = true;
};

struct EoAResult {
  double e_a_lower_bound = 0.0;  // in units of log_base
  double log_base = 2.0;
  Index ensemble_size = 0;
  Index rank = 0;
  int restarts = 0;
  int best_restart = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  Decomposition best;
  std::vector<RestartTrace> traces;
};

/// Square-root factor B (d x r) of a PSD matrix, dropping eigenvalues below
/// `cutoff`.
ComplexMatrix support_factor(const ComplexMatrix& rho, double cutoff);

/// F(W) in nats for the isometry W and support factor B.
double assisted_entropy(const ComplexMatrix& w, const ComplexMatrix& b);

/// Euclidean gradient G with dF = Re tr(G^dagger dW).
ComplexMatrix assisted_entropy_gradient(const ComplexMatrix& w, const ComplexMatrix& b);

/// Projection of a Euclidean gradient onto the tangent space at W.
ComplexMatrix stiefel_project(const ComplexMatrix& w, const ComplexMatrix& euclidean);

/// Q factor of a thin QR with positive real diagonal in R.
ComplexMatrix qr_retract(const ComplexMatrix& x);

/// Decomposition induced by an isometry W.
Decomposition decomposition_from(const ComplexMatrix& w, const ComplexMatrix& b);

/// Average member entanglement (in units of log_base) of an explicit
/// decomposition whose vectors are expressed on |mm>.
double average_entanglement(const Decomposition& dec, double log_base = 2.0);

/// Best-of-restarts lower bound on E_A of the Choi state of `phi`.
/// Throws ConvergenceFailure if a NaN appears during optimization.
EoAResult entanglement_of_assistance(const dephasing::DephasingFactorMatrix& phi, const EoAOptions& opts = {});

}  // namespace deph::witness
