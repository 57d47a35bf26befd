#include "deph/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deph/errors.hpp"

namespace deph::qmat {

namespace {

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw NonSquare(a.rows(), a.cols());
}

void require_bipartite(const ComplexMatrix& rho, BipartiteDims dims) {
  require_square(rho);
  if (dims.a <= 0 || dims.b <= 0 || dims.a * dims.b != rho.rows()) {
    std::ostringstream os;
    os << "bipartite dims " << dims.a << "x" << dims.b << " do not match a " << rho.rows() << "x"
       << rho.cols() << " matrix";
    throw DimensionMismatch(os.str());
  }
}

std::complex<double> complex_normal(Rng& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermiticity_deviation(const ComplexMatrix& a) {
  require_square(a);
  return max_abs(a - a.adjoint());
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return hermiticity_deviation(a) <= rel_tol * std::max(max_abs(a), 1e-300);
}

double unitarity_deviation(const ComplexMatrix& u) {
  require_square(u);
  return max_abs(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols()));
}

HermitianEigen hermitian_eig(const ComplexMatrix& a) {
  require_square(a);
  const double dev = hermiticity_deviation(a);
  if (dev > kHermitianTol * std::max(max_abs(a), 1e-300)) throw NonHermitianInput(dev);

  // Symmetrize so the residual skew part does not leak into the solver.
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const Index n = h.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()[0];
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a);
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Subsystem subsystem) {
  require_bipartite(rho, dims);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Index i = 0; i < dims.a; ++i) {
    for (Index j = 0; j < dims.a; ++j) {
      for (Index k = 0; k < dims.b; ++k) {
        for (Index l = 0; l < dims.b; ++l) {
          const Complex v = rho(i * dims.b + k, j * dims.b + l);
          if (subsystem == Subsystem::A) {
            out(j * dims.b + k, i * dims.b + l) = v;
          } else {
            out(i * dims.b + l, j * dims.b + k) = v;
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Subsystem traced) {
  require_bipartite(rho, dims);
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
    for (Index i = 0; i < dims.a; ++i)
      for (Index j = 0; j < dims.a; ++j)
        out(i, j) = rho.block(i * dims.b, j * dims.b, dims.b, dims.b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
  for (Index i = 0; i < dims.a; ++i) out += rho.block(i * dims.b, i * dims.b, dims.b, dims.b);
  return out;
}

ComplexMatrix matexp_hermitian(const ComplexMatrix& h, double t) {
  const HermitianEigen eig = hermitian_eig(h);
  ComplexVector phases(eig.values.size());
  for (Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -eig.values[k] * t);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

void validate_state(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw NotAState("density matrix must be square and non-empty");
  if (!is_hermitian(rho, std::max(kHermitianTol, tol))) throw NotAState("density matrix is not Hermitian");
  const double tr_err = std::abs(rho.trace() - 1.0);
  if (tr_err > tol) {
    std::ostringstream os;
    os << "density matrix trace deviates from 1 by " << tr_err;
    throw NotAState(os.str());
  }
  const double min_eig = hermitian_eig(0.5 * (rho + rho.adjoint())).values.minCoeff();
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    throw NotAState(os.str());
  }
}

double shannon_entropy(std::span<const double> probabilities, double log_base) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(log_base);
}

double von_neumann_entropy(const ComplexMatrix& rho, double log_base) {
  validate_state(rho, 1e-9);
  const RealVector lambda = hermitian_eig(0.5 * (rho + rho.adjoint())).values;
  return shannon_entropy(std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())),
                         log_base);
}

ComplexMatrix haar_random_unitary(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) z(i, j) = complex_normal(rng, normal);

  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  // Fix the QR gauge: Q * diag(r_kk / |r_kk|) is Haar distributed.
  for (Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

ComplexMatrix haar_random_unitary(Index d, RngSeed seed) {
  Rng rng = make_rng(seed);
  return haar_random_unitary(d, rng);
}

ComplexVector random_pure_state(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) v[i] = complex_normal(rng, normal);
  return v / v.norm();
}

ComplexVector random_pure_state(Index d, RngSeed seed) {
  Rng rng = make_rng(seed);
  return random_pure_state(d, rng);
}

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw Error(std::string("unknown Pauli label '") + which + "'");
  }
  return m;
}

}  // namespace deph::qmat
