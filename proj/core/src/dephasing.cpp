#include "deph/dephasing.hpp"

#include <cmath>
#include <sstream>

#include "deph/errors.hpp"

namespace deph::dephasing {

DephasingFactorMatrix::DephasingFactorMatrix(ComplexMatrix phi, double psd_tol) : phi_(std::move(phi)) {
  if (phi_.rows() != phi_.cols()) throw NonSquare(phi_.rows(), phi_.cols());
  if (phi_.rows() == 0) throw NotAState("dephasing matrix is empty");
  if (qmat::hermiticity_deviation(phi_) > psd_tol) throw NotAState("dephasing matrix is not Hermitian");
  for (Index i = 0; i < phi_.rows(); ++i) {
    if (std::abs(phi_(i, i) - 1.0) > psd_tol) {
      std::ostringstream os;
      os << "dephasing matrix diagonal entry " << i << " is " << phi_(i, i).real() << ", expected 1";
      throw NotAState(os.str());
    }
  }
  phi_ = 0.5 * (phi_ + phi_.adjoint()).eval();
  phi_.diagonal().setOnes();
  const double min_eig = qmat::hermitian_eig(phi_).values.minCoeff();
  if (min_eig < -psd_tol) {
    std::ostringstream os;
    os << "dephasing matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw NotAState(os.str());
  }
}

PureDephasingChannel::PureDephasingChannel(std::vector<ComplexMatrix> unitaries, ComplexMatrix env_state)
    : unitaries_(std::move(unitaries)), env_state_(std::move(env_state)) {}

ComplexMatrix PureDephasingChannel::conditional_env(Index i, Index j) const {
  return unitaries_[static_cast<std::size_t>(i)] * env_state_ * unitaries_[static_cast<std::size_t>(j)].adjoint();
}

PureDephasingChannel build_channel(std::vector<ComplexMatrix> unitaries, ComplexMatrix env_state) {
  if (unitaries.empty()) throw DimensionMismatch("channel needs at least one environment unitary");
  if (env_state.rows() != env_state.cols()) throw NonSquare(env_state.rows(), env_state.cols());
  const Index d_env = env_state.rows();
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const ComplexMatrix& v = unitaries[i];
    if (v.rows() != d_env || v.cols() != d_env) {
      std::ostringstream os;
      os << "unitaries[" << i << "] is " << v.rows() << "x" << v.cols() << ", environment dimension is " << d_env;
      throw DimensionMismatch(os.str());
    }
    const double dev = qmat::unitarity_deviation(v);
    if (!(dev <= kUnitaryTol)) throw NonUnitary(i, dev);
  }
  qmat::validate_state(env_state, kStateTol);
  return PureDephasingChannel(std::move(unitaries), std::move(env_state));
}

DephasingFactorMatrix dephasing_matrix(const PureDephasingChannel& ch) {
  const Index d = ch.dim_system();
  ComplexMatrix phi(d, d);
  for (Index i = 0; i < d; ++i) {
    phi(i, i) = 1.0;
    for (Index j = i + 1; j < d; ++j) {
      phi(i, j) = ch.conditional_env(i, j).trace();
      phi(j, i) = std::conj(phi(i, j));
    }
  }
  return DephasingFactorMatrix(std::move(phi));
}

ComplexMatrix evolve_joint(const PureDephasingChannel& ch, const ComplexMatrix& rho_s) {
  const Index d = ch.dim_system();
  const Index de = ch.dim_env();
  if (rho_s.rows() != d || rho_s.cols() != d) throw DimensionMismatch("system state does not match channel dimension");
  ComplexMatrix out(d * de, d * de);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out.block(i * de, j * de, de, de) = rho_s(i, j) * ch.conditional_env(i, j);
  return out;
}

ComplexMatrix apply_channel(const DephasingFactorMatrix& phi, const ComplexMatrix& rho_s) {
  if (rho_s.rows() != phi.dim() || rho_s.cols() != phi.dim())
    throw DimensionMismatch("system state does not match dephasing matrix dimension");
  ComplexMatrix out = phi.matrix().cwiseProduct(rho_s);
  out.diagonal() = rho_s.diagonal();
  return out;
}

ComplexMatrix choi_state(const DephasingFactorMatrix& phi) { return phi.matrix() / static_cast<double>(phi.dim()); }

ComplexMatrix choi_embedding(const DephasingFactorMatrix& phi) {
  const Index d = phi.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  for (Index m = 0; m < d; ++m)
    for (Index n = 0; n < d; ++n) out(m * d + m, n * d + n) = phi(m, n) / static_cast<double>(d);
  return out;
}

ComplexMatrix maximally_coherent_state(Index d) {
  return ComplexMatrix::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0));
}

}  // namespace deph::dephasing
