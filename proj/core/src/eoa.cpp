#include "deph/eoa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "deph/errors.hpp"
#include "deph/parallel.hpp"

namespace deph::witness {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e4;

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace().real(); }

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  return qr_retract(z);
}

struct AscentOutcome {
  ComplexMatrix w;
  double objective = 0.0;  // nats
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool monotone = true;
};

AscentOutcome ascend(ComplexMatrix w, const ComplexMatrix& b, const EoAOptions& opts) {
  AscentOutcome out;
  double f = assisted_entropy(w, b);
  ComplexMatrix grad = stiefel_project(w, assisted_entropy_gradient(w, b));
  double gnorm = grad.norm();
  double step = 1.0;
  std::deque<double> history{f};

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (!std::isfinite(f) || !std::isfinite(gnorm)) throw ConvergenceFailure("NaN encountered in assisted-entropy ascent");
    if (gnorm < opts.gradient_tol) {
      out.converged = true;
      break;
    }

    // Armijo backtracking from the Barzilai-Borwein trial step.
    ComplexMatrix w_new;
    double f_new = f;
    bool accepted = false;
    while (step >= kMinStep) {
      w_new = qr_retract(w + step * grad);
      f_new = assisted_entropy(w_new, b);
      if (f_new >= f + kArmijo * step * gnorm * gnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No representable ascent left along the gradient: the objective sits on
      // its floating-point plateau.
      out.converged = true;
      break;
    }
    if (f_new < f) out.monotone = false;

    ComplexMatrix grad_new = stiefel_project(w_new, assisted_entropy_gradient(w_new, b));
    const ComplexMatrix s = w_new - w;
    const ComplexMatrix y = grad_new - grad;
    const double sy = real_inner(s, y);
    const double ss = real_inner(s, s);
    step = std::abs(sy) > 0.0 ? std::clamp(ss / std::abs(sy), kMinStep * 1e4, kMaxStep) : std::min(2.0 * step, kMaxStep);

    w = std::move(w_new);
    grad = std::move(grad_new);
    gnorm = grad.norm();
    f = f_new;

    history.push_back(f);
    if (static_cast<int>(history.size()) > opts.stall_window + 1) history.pop_front();
    if (static_cast<int>(history.size()) == opts.stall_window + 1 &&
        std::abs(f - history.front()) <= opts.relative_tol * std::max(std::abs(f), 1e-300)) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.w = std::move(w);
  out.objective = f;
  out.iterations = it;
  out.gradient_norm = gnorm;
  return out;
}

}  // namespace

ComplexMatrix Decomposition::reconstruct() const {
  if (vectors.empty()) return {};
  const Index d = vectors.front().size();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < vectors.size(); ++i) rho += weights[i] * vectors[i] * vectors[i].adjoint();
  return rho;
}

ComplexMatrix support_factor(const ComplexMatrix& rho, double cutoff) {
  const qmat::HermitianEigen eig = qmat::hermitian_eig(rho);
  Index r = 0;
  while (r < eig.values.size() && eig.values[r] > cutoff) ++r;
  r = std::max<Index>(r, 1);
  ComplexMatrix b(rho.rows(), r);
  for (Index k = 0; k < r; ++k) b.col(k) = eig.vectors.col(k) * std::sqrt(std::max(eig.values[k], 0.0));
  return b;
}

double assisted_entropy(const ComplexMatrix& w, const ComplexMatrix& b) {
  const ComplexMatrix psi = w * b.transpose();
  double f = 0.0;
  for (Index i = 0; i < psi.rows(); ++i) {
    double p = 0.0;
    for (Index m = 0; m < psi.cols(); ++m) {
      const double a = std::norm(psi(i, m));
      p += a;
      if (a > 0.0) f -= a * std::log(a);
    }
    if (p > 0.0) f += p * std::log(p);
  }
  return f;
}

ComplexMatrix assisted_entropy_gradient(const ComplexMatrix& w, const ComplexMatrix& b) {
  ComplexMatrix psi = w * b.transpose();
  for (Index i = 0; i < psi.rows(); ++i) {
    const double p = psi.row(i).squaredNorm();
    for (Index m = 0; m < psi.cols(); ++m) {
      const double a = std::norm(psi(i, m));
      // a log(p / a) -> 0 as a -> 0, so vanishing amplitudes carry no gradient.
      psi(i, m) *= a > 0.0 ? std::log(p / a) : 0.0;
    }
  }
  return 2.0 * psi * b.conjugate();
}

ComplexMatrix stiefel_project(const ComplexMatrix& w, const ComplexMatrix& euclidean) {
  const ComplexMatrix x = w.adjoint() * euclidean;
  return euclidean - w * (0.5 * (x + x.adjoint()));
}

ComplexMatrix qr_retract(const ComplexMatrix& x) {
  Eigen::HouseholderQR<ComplexMatrix> qr(x);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(x.rows(), x.cols());
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < x.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Decomposition decomposition_from(const ComplexMatrix& w, const ComplexMatrix& b) {
  const ComplexMatrix psi = w * b.transpose();
  Decomposition dec;
  for (Index i = 0; i < psi.rows(); ++i) {
    const double p = psi.row(i).squaredNorm();
    if (p <= 0.0) continue;
    dec.weights.push_back(p);
    dec.vectors.push_back(psi.row(i).transpose() / std::sqrt(p));
  }
  // Renormalize so the weights sum to one; the truncated support has trace
  // 1 - O(d * rank_cutoff).
  double total = 0.0;
  for (double p : dec.weights) total += p;
  for (double& p : dec.weights) p /= total;
  return dec;
}

double average_entanglement(const Decomposition& dec, double log_base) {
  double e = 0.0;
  std::vector<double> probs;
  for (std::size_t i = 0; i < dec.vectors.size(); ++i) {
    const ComplexVector& v = dec.vectors[i];
    const double norm2 = v.squaredNorm();
    probs.assign(static_cast<std::size_t>(v.size()), 0.0);
    for (Index m = 0; m < v.size(); ++m) probs[static_cast<std::size_t>(m)] = std::norm(v[m]) / norm2;
    e += dec.weights[i] * qmat::shannon_entropy(probs, log_base);
  }
  return e;
}

EoAResult entanglement_of_assistance(const dephasing::DephasingFactorMatrix& phi, const EoAOptions& opts) {
  const Index d = phi.dim();
  const ComplexMatrix b = support_factor(dephasing::choi_state(phi), opts.rank_cutoff);
  const Index r = b.cols();
  const Index k = opts.ensemble_size > 0 ? std::max(opts.ensemble_size, r) : std::max(4 * r * r, d);
  const int restarts = std::max(opts.restarts, 1);
  const double nats_per_unit = std::log(opts.log_base);

  std::vector<AscentOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(static_cast<std::size_t>(restarts), opts.threads, [&](std::size_t i) {
    Rng rng = make_rng(opts.seed.derive(i));
    outcomes[i] = ascend(random_isometry(k, r, rng), b, opts);
  });

  EoAResult result;
  result.log_base = opts.log_base;
  result.ensemble_size = k;
  result.rank = r;
  result.restarts = restarts;
  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const AscentOutcome& o = outcomes[i];
    result.traces.push_back(RestartTrace{static_cast<int>(i), o.objective / nats_per_unit, o.iterations,
                                         o.gradient_norm, o.converged, o.monotone});
    if (o.objective > outcomes[best].objective + 1e-12) best = i;
  }
  const AscentOutcome& winner = outcomes[best];
  result.best_restart = static_cast<int>(best);
  result.e_a_lower_bound = std::max(winner.objective, 0.0) / nats_per_unit;
  result.converged = winner.converged;
  result.gradient_norm = winner.gradient_norm;
  result.best = decomposition_from(winner.w, b);
  return result;
}

}  // namespace deph::witness
