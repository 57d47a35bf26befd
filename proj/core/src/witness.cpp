#include "deph/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "deph/errors.hpp"

namespace deph::witness {

namespace {

using dephasing::PureDephasingChannel;

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

std::vector<ComplexMatrix> all_conditional_states(const PureDephasingChannel& ch) {
  const Index d = ch.dim_system();
  std::vector<ComplexMatrix> r(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) r[static_cast<std::size_t>(i * d + j)] = ch.conditional_env(i, j);
  return r;
}

std::vector<ComplexMatrix> all_unitary_ratios(const PureDephasingChannel& ch) {
  const Index d = ch.dim_system();
  const auto& v = ch.unitaries();
  std::vector<ComplexMatrix> y(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      y[static_cast<std::size_t>(i * d + j)] = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)].adjoint();
  return y;
}

// max over unordered pairs of ||sandwich [A_p, A_q] sandwich||.
double max_pairwise_commutator(const std::vector<ComplexMatrix>& ops, const ComplexMatrix* sandwich) {
  double worst = 0.0;
  for (std::size_t p = 0; p < ops.size(); ++p) {
    for (std::size_t q = p + 1; q < ops.size(); ++q) {
      ComplexMatrix c = commutator(ops[p], ops[q]);
      if (sandwich != nullptr) c = (*sandwich) * c * (*sandwich);
      worst = std::max(worst, qmat::operator_norm(c));
    }
  }
  return worst;
}

}  // namespace

CriterionResult zero_discord_check(const PureDephasingChannel& ch, double tol) {
  const double v = max_pairwise_commutator(all_conditional_states(ch), nullptr);
  return {v <= tol, v};
}

QubitLikeResult qubit_like_check(const PureDephasingChannel& ch, double tol) {
  const Index d = ch.dim_system();
  std::vector<ComplexMatrix> diag;
  for (Index i = 0; i < d; ++i) diag.push_back(ch.conditional_env(i, i));
  double worst = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) worst = std::max(worst, qmat::operator_norm(diag[i] - diag[j]));
  QubitLikeResult out;
  out.pass = worst <= tol;
  out.max_violation = worst;
  out.r = diag.front();
  return out;
}

QutritLikeResult qutrit_like_check(const PureDephasingChannel& ch, double tol) {
  const QubitLikeResult qubit = qubit_like_check(ch, tol);
  const double v = max_pairwise_commutator(all_unitary_ratios(ch), &qubit.r);
  QutritLikeResult out;
  out.pass = v <= tol;
  out.max_violation = v;
  out.used_branch0_r = !qubit.pass;
  return out;
}

CriteriaReport check_criteria(const PureDephasingChannel& ch, double tol) {
  CriteriaReport report;
  report.tolerance = tol;
  report.zero_discord = zero_discord_check(ch, tol);
  const QubitLikeResult qubit = qubit_like_check(ch, tol);
  report.qubit_like = {qubit.pass, qubit.max_violation};
  report.qutrit_like = qutrit_like_check(ch, tol);
  return report;
}

std::vector<PrincipalMinor> qutrit_principal_minors(const PureDephasingChannel& ch, const ComplexVector& amplitudes,
                                                    double tol) {
  if (ch.dim_system() != 3 || amplitudes.size() != 3)
    throw DimensionMismatch("principal minors are defined for a qutrit system with three amplitudes");

  const auto& v = ch.unitaries();
  const ComplexMatrix r = ch.conditional_env(0, 0);
  const ComplexMatrix y01 = v[0] * v[1].adjoint();
  const ComplexMatrix y02 = v[0] * v[2].adjoint();
  const qmat::HermitianEigen eig = qmat::hermitian_eig(r);

  std::vector<PrincipalMinor> minors;
  Index start = 0;
  Index block = 0;
  const Index n = eig.values.size();
  while (start < n && eig.values[start] > tol) {
    Index stop = start + 1;
    while (stop < n && eig.values[stop] > tol && std::abs(eig.values[stop] - eig.values[start]) <= tol) ++stop;
    const Index k = stop - start;
    const ComplexMatrix basis = eig.vectors.middleCols(start, k);
    const double q = eig.values.segment(start, k).mean();

    // Y_01 restricted to the block is normal (unitary when the qubit-like
    // condition holds), so its Schur form is diagonal.
    Eigen::ComplexSchur<ComplexMatrix> schur(basis.adjoint() * y01 * basis);
    const ComplexMatrix e = basis * schur.matrixU();
    const ComplexMatrix& t = schur.matrixT();

    for (Index m = 0; m < k; ++m) {
      for (Index mp = 0; mp < k; ++mp) {
        const std::array<std::pair<Index, Index>, 3> rows{{{0, m}, {1, m}, {2, mp}}};
        Eigen::Matrix3cd minor;
        for (int p = 0; p < 3; ++p) {
          for (int s = 0; s < 3; ++s) {
            const auto [ap, xp] = rows[static_cast<std::size_t>(p)];
            const auto [as, xs] = rows[static_cast<std::size_t>(s)];
            const Complex elem = (e.col(xp).adjoint() * ch.conditional_env(as, ap) * e.col(xs))(0, 0);
            minor(p, s) = amplitudes[as] * std::conj(amplitudes[ap]) * elem;
          }
        }
        PrincipalMinor pm;
        pm.block = block;
        pm.m = m;
        pm.m_prime = mp;
        pm.q = q;
        pm.theta_m = std::arg(t(m, m));
        pm.theta_m_prime = std::arg(t(mp, mp));
        pm.x = (e.col(mp).adjoint() * y02 * e.col(m))(0, 0);
        pm.value = minor.determinant().real();
        minors.push_back(pm);
      }
    }
    start = stop;
    ++block;
  }
  return minors;
}

double negativity(const ComplexMatrix& rho, qmat::BipartiteDims dims) {
  const ComplexMatrix pt = qmat::partial_transpose(rho, dims, qmat::Subsystem::A);
  qmat::validate_state(rho, 1e-9);
  return std::max(0.0, 0.5 * (qmat::trace_norm(pt) - 1.0));
}

double negativity_pure(const ComplexMatrix& coefficients) {
  Eigen::JacobiSVD<ComplexMatrix> svd(coefficients);
  const double s = svd.singularValues().sum();
  return std::max(0.0, 0.5 * (s * s - 1.0));
}

WitnessReport q_a(const dephasing::DephasingFactorMatrix& phi, const EoAOptions& opts) {
  WitnessReport report;
  report.log_base = opts.log_base;
  report.e_a_max = std::log(static_cast<double>(phi.dim())) / std::log(opts.log_base);
  report.eoa = entanglement_of_assistance(phi, opts);
  report.e_a = report.eoa.e_a_lower_bound;
  report.q_a = report.e_a_max - report.e_a;
  return report;
}

WitnessReport analyze_channel(const PureDephasingChannel& ch, const EoAOptions& opts, double tol,
                              const std::optional<ComplexMatrix>& rho_s) {
  WitnessReport report = q_a(dephasing::dephasing_matrix(ch), opts);
  report.criteria = check_criteria(ch, tol);
  if (rho_s) {
    qmat::validate_state(*rho_s, 1e-9);
    report.negativity = negativity(dephasing::evolve_joint(ch, *rho_s), {ch.dim_system(), ch.dim_env()});
  }
  return report;
}

dephasing::DephasingFactorMatrix random_mu_dephasing(Index d_s, Index terms, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& w : weights) total += (w = expo(rng));
  ComplexMatrix phi = ComplexMatrix::Zero(d_s, d_s);
  for (double w : weights) {
    ComplexVector u(d_s);
    for (Index i = 0; i < d_s; ++i) u[i] = std::polar(1.0, angle(rng));
    phi += (w / total) * u * u.adjoint();
  }
  phi.diagonal().setOnes();
  return dephasing::DephasingFactorMatrix(std::move(phi));
}

MuBaselineStats mu_baseline(Index d_s, Index n_samples, RngSeed seed, const EoAOptions& opts) {
  MuBaselineStats stats;
  stats.d_s = d_s;
  stats.samples = n_samples;
  double sum = 0.0;
  for (Index s = 0; s < n_samples; ++s) {
    Rng rng = make_rng(seed.derive(static_cast<std::uint64_t>(s)));
    const auto phi = random_mu_dephasing(d_s, d_s, rng);
    EoAOptions local = opts;
    local.seed = seed.derive(static_cast<std::uint64_t>(s) + 0x9e3779b97f4a7c15ULL);
    const double q = q_a(phi, local).q_a;
    stats.max_q_a = s == 0 ? q : std::max(stats.max_q_a, q);
    sum += q;
  }
  stats.mean_q_a = n_samples > 0 ? sum / static_cast<double>(n_samples) : 0.0;
  return stats;
}

}  // namespace deph::witness
