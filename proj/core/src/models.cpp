#include "deph/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "deph/errors.hpp"
#include "deph/parallel.hpp"
#include "deph/witness.hpp"

namespace deph::models {

namespace {

constexpr double kAxisTol = 1e-12;
constexpr std::uint64_t kOptimizerStream = 0x9e3779b97f4a7c15ULL;

void check_axis(const Axis& n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > kAxisTol) throw DimensionMismatch("rotation axis is not a unit vector");
}

ComplexMatrix target_matrix(const Gate& g) {
  using qmat::pauli;
  switch (g.kind) {
    case GateKind::RZ:
    case GateKind::CCRZ:
      return rotation(g.theta, {0.0, 0.0, 1.0});
    case GateKind::RN:
    case GateKind::CCRN:
      check_axis(g.axis);
      return rotation(g.theta, g.axis);
    case GateKind::X:
      return pauli('X');
    case GateKind::H:
      return (pauli('X') + pauli('Z')) / std::numbers::sqrt2;
    case GateKind::CZ:
      return pauli('Z');
  }
  return ComplexMatrix::Identity(2, 2);
}

std::size_t expected_arity(GateKind k) {
  switch (k) {
    case GateKind::CZ:
      return 2;
    case GateKind::CCRZ:
    case GateKind::CCRN:
      return 3;
    default:
      return 1;
  }
}

// Left-multiplies `u` by the gate acting on an n-qubit register.
void apply_gate(ComplexMatrix& u, const Gate& g, int n) {
  if (g.qubits.size() != expected_arity(g.kind)) throw IndexOutOfRange("gate has the wrong number of qubit indices");
  for (int q : g.qubits)
    if (q < 0 || q >= n) throw IndexOutOfRange("qubit index " + std::to_string(q) + " outside a " + std::to_string(n) + "-qubit register");
  for (std::size_t a = 0; a < g.qubits.size(); ++a)
    for (std::size_t b = a + 1; b < g.qubits.size(); ++b)
      if (g.qubits[a] == g.qubits[b]) throw IndexOutOfRange("gate acts twice on qubit " + std::to_string(g.qubits[a]));

  const ComplexMatrix m = target_matrix(g);
  const Index dim = Index{1} << n;
  const Index tbit = Index{1} << (n - 1 - g.qubits.back());
  Index cmask = 0;
  for (std::size_t k = 0; k + 1 < g.qubits.size(); ++k) cmask |= Index{1} << (n - 1 - g.qubits[k]);

  for (Index row = 0; row < dim; ++row) {
    if ((row & tbit) != 0 || (row & cmask) != cmask) continue;
    const Index r1 = row | tbit;
    for (Index col = 0; col < u.cols(); ++col) {
      const Complex a0 = u(row, col);
      const Complex a1 = u(r1, col);
      u(row, col) = m(0, 0) * a0 + m(0, 1) * a1;
      u(r1, col) = m(1, 0) * a0 + m(1, 1) * a1;
    }
  }
}

Gate make(GateKind k, std::vector<int> qubits, double theta = 0.0, Axis axis = {0.0, 0.0, 1.0}) {
  Gate g;
  g.kind = k;
  g.qubits = std::move(qubits);
  g.theta = theta;
  g.axis = axis;
  return g;
}

// Eigenbasis of a Pauli as rows: row 0 is the +1 eigenvector (bra), row 1 the -1.
ComplexMatrix measurement_basis(char p) {
  const double s = 1.0 / std::numbers::sqrt2;
  ComplexMatrix b(2, 2);
  switch (p) {
    case 'X':
      b << s, s, s, -s;
      break;
    case 'Y':
      b << s, Complex(0, -s), s, Complex(0, s);
      break;
    default:
      b << 1, 0, 0, 1;
  }
  return b;
}

constexpr std::array<char, 3> kPaulis{'X', 'Y', 'Z'};

using OutcomeFreqs = std::array<double, 4>;  // index a*2 + b, bit 0 is the +1 outcome

std::array<OutcomeFreqs, 9> born_probabilities(const ComplexMatrix& rho) {
  std::array<OutcomeFreqs, 9> probs{};
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      const ComplexMatrix b = qmat::kron(measurement_basis(kPaulis[p]), measurement_basis(kPaulis[q]));
      const ComplexMatrix rotated = b * rho * b.adjoint();
      for (int k = 0; k < 4; ++k) probs[p * 3 + q][k] = std::max(rotated(k, k).real(), 0.0);
    }
  }
  return probs;
}

ComplexMatrix reconstruct(const std::array<OutcomeFreqs, 9>& freqs) {
  // expectation[mu][nu] for mu, nu in {I, X, Y, Z}.
  double e[4][4] = {};
  e[0][0] = 1.0;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      const OutcomeFreqs& f = freqs[p * 3 + q];
      e[p + 1][q + 1] = f[0] - f[1] - f[2] + f[3];
      e[p + 1][0] += (f[0] + f[1] - f[2] - f[3]) / 3.0;
      e[0][q + 1] += (f[0] - f[1] + f[2] - f[3]) / 3.0;
    }
  }
  const char names[4] = {'I', 'X', 'Y', 'Z'};
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) rho += e[mu][nu] * qmat::kron(qmat::pauli(names[mu]), qmat::pauli(names[nu]));
  return rho / 4.0;
}

void require_positive(const char* field, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw NonPositiveInput(field, value);
}

}  // namespace

Circuit& Circuit::rz(int q, double theta) {
  gates.push_back(make(GateKind::RZ, {q}, theta));
  return *this;
}
Circuit& Circuit::rn(int q, double theta, const Axis& axis) {
  gates.push_back(make(GateKind::RN, {q}, theta, axis));
  return *this;
}
Circuit& Circuit::x(int q) {
  gates.push_back(make(GateKind::X, {q}));
  return *this;
}
Circuit& Circuit::h(int q) {
  gates.push_back(make(GateKind::H, {q}));
  return *this;
}
Circuit& Circuit::cz(int a, int b) {
  gates.push_back(make(GateKind::CZ, {a, b}));
  return *this;
}
Circuit& Circuit::ccrz(int c0, int c1, int t, double theta) {
  gates.push_back(make(GateKind::CCRZ, {c0, c1, t}, theta));
  return *this;
}
Circuit& Circuit::ccrn(int c0, int c1, int t, double theta, const Axis& axis) {
  gates.push_back(make(GateKind::CCRN, {c0, c1, t}, theta, axis));
  return *this;
}
Circuit& Circuit::append(const Circuit& other) {
  num_qubits = std::max(num_qubits, other.num_qubits);
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

ComplexMatrix rotation(double theta, const Axis& n) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex mi(0.0, -1.0);
  return c * ComplexMatrix::Identity(2, 2) +
         mi * s * (n[0] * qmat::pauli('X') + n[1] * qmat::pauli('Y') + n[2] * qmat::pauli('Z'));
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  if (c.num_qubits < 0 || c.num_qubits > 16) throw IndexOutOfRange("qubit count must lie in [0, 16]");
  const Index dim = Index{1} << c.num_qubits;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const Gate& g : c.gates) apply_gate(u, g, c.num_qubits);
  return u;
}

double phase_invariant_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw DimensionMismatch("operands differ in shape");
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return (u - phase * v).norm() / std::sqrt(static_cast<double>(u.rows()));
}

Circuit ccrn_decomposition(int c0, int c1, int t, double theta, const Axis& axis) {
  check_axis(axis);
  if (std::abs(axis[2]) > kAxisTol) throw DimensionMismatch("CZ-based decomposition needs an axis in the xy plane");
  // Z n.sigma Z = -n.sigma for in-plane n, so each CZ flips the sign of the
  // following rotation on its control branch. Only the branch with both
  // controls set accumulates the full angle.
  const double a = theta / 4.0;
  Circuit c;
  c.num_qubits = std::max({c0, c1, t}) + 1;
  c.rn(t, a, axis).cz(c0, t).rn(t, -a, axis).cz(c1, t).rn(t, a, axis).cz(c0, t).rn(t, -a, axis).cz(c1, t);
  return c;
}

Circuit ccrz_decomposition(double theta) {
  Circuit c;
  c.num_qubits = 3;
  c.h(2);
  c.append(ccrn_decomposition(0, 1, 2, theta, {1.0, 0.0, 0.0}));
  c.h(2);
  return c;
}

std::optional<Axis> trapped_ion_axis(int label) {
  switch (label) {
    case 1:
      return kAxisN1;
    case 2:
      return kAxisY;
    case 3:
      return kAxisN2;
    case 0:
      return std::nullopt;
    default:
      throw IndexOutOfRange("trapped-ion label must be in 0..3");
  }
}

Circuit experiment_circuit(double theta) {
  Circuit c;
  c.num_qubits = 3;
  for (int label = 1; label <= 3; ++label) {
    const bool c0_white = (label & 2) == 0;
    const bool c1_white = (label & 1) == 0;
    if (c0_white) c.x(0);
    if (c1_white) c.x(1);
    c.append(ccrn_decomposition(0, 1, 2, theta, *trapped_ion_axis(label)));
    if (c0_white) c.x(0);
    if (c1_white) c.x(1);
  }
  return c;
}

std::vector<ComplexMatrix> trapped_ion_unitaries(double t) {
  std::vector<ComplexMatrix> v;
  v.reserve(4);
  for (int label = 0; label < 4; ++label) {
    const auto axis = trapped_ion_axis(label);
    v.push_back(axis ? rotation(2.0 * t, *axis) : ComplexMatrix::Identity(2, 2));
  }
  return v;
}

ComplexMatrix trapped_ion_hamiltonian() {
  ComplexMatrix h = ComplexMatrix::Zero(8, 8);
  for (int label = 1; label < 4; ++label) {
    const Axis n = *trapped_ion_axis(label);
    ComplexMatrix proj = ComplexMatrix::Zero(4, 4);
    proj(label, label) = 1.0;
    const ComplexMatrix ns = n[0] * qmat::pauli('X') + n[1] * qmat::pauli('Y') + n[2] * qmat::pauli('Z');
    h += qmat::kron(proj, ns);
  }
  return h;
}

dephasing::PureDephasingChannel trapped_ion_channel(double t) {
  ComplexMatrix env = ComplexMatrix::Zero(2, 2);
  env(0, 0) = 1.0;
  return dephasing::build_channel(trapped_ion_unitaries(t), env);
}

ComplexMatrix simulate_tomography(const ComplexMatrix& rho, int shots, RngSeed seed) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("tomography expects a two-qubit state");
  if (shots < 1) throw NonPositiveInput("shots", shots);
  qmat::validate_state(rho);
  const auto probs = born_probabilities(rho);
  Rng rng = make_rng(seed);
  std::array<OutcomeFreqs, 9> freqs{};
  for (std::size_t s = 0; s < probs.size(); ++s) {
    std::discrete_distribution<int> outcome(probs[s].begin(), probs[s].end());
    for (int k = 0; k < shots; ++k) freqs[s][static_cast<std::size_t>(outcome(rng))] += 1.0;
    for (double& f : freqs[s]) f /= shots;
  }
  return reconstruct(freqs);
}

ComplexMatrix tomography_exact(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("tomography expects a two-qubit state");
  qmat::validate_state(rho);
  return reconstruct(born_probabilities(rho));
}

double GravityParams::t_star() const { return std::numbers::pi / omega_tilde; }

GravityParams gravity_params(const GravityInputs& in) {
  require_positive("rho-density", in.density);
  require_positive("r-particle", in.r_particle);
  require_positive("r-osc", in.r_osc);
  require_positive("d", in.d);
  require_positive("d0", in.d0);
  require_positive("omega", in.omega);
  require_positive("temp", in.temperature);

  using namespace constants;
  GravityParams p;
  p.inputs = in;
  const double sphere = 4.0 / 3.0 * std::numbers::pi;
  p.m = in.density * sphere * std::pow(in.r_particle, 3);
  p.big_m = in.density * sphere * std::pow(in.r_osc, 3);
  const double d3 = std::pow(in.d, 3);
  if (in.omega_is_bare) {
    const double shifted = in.omega * in.omega - 2.0 * kG * p.m / d3;
    require_positive("omega", shifted);
    p.omega_tilde = std::sqrt(shifted);
  } else {
    p.omega_tilde = in.omega;
  }
  p.g = -(kG * p.m * in.d0 / d3) * std::sqrt(p.big_m / (2.0 * kHbar * p.omega_tilde));
  p.omega_m = kG * p.big_m * p.m * in.d0 / (2.0 * kHbar * in.d * in.d);
  p.n_bar = 1.0 / std::expm1(kHbar * p.omega_tilde / (kBoltzmann * in.temperature));
  return p;
}

dephasing::DephasingFactorMatrix gravity_phi(const GravityParams& p, double t) {
  constexpr std::array<int, 4> s1{1, 1, -1, -1};
  constexpr std::array<int, 4> s2{1, -1, 1, -1};
  const double w = p.omega_tilde;
  std::array<Complex, 4> alpha{};
  std::array<double, 4> dyn{};
  std::array<double, 4> common{};
  for (int s = 0; s < 4; ++s) {
    const double sum = s1[s] + s2[s];
    const double ratio = p.g * sum / w;
    alpha[s] = ratio * (std::polar(1.0, -w * t) - 1.0);
    dyn[s] = ratio * ratio * (w * t - std::sin(w * t));
    common[s] = p.omega_m * sum;
  }
  ComplexMatrix phi = ComplexMatrix::Identity(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      const double phase = -(common[a] - common[b]) * t + (dyn[a] - dyn[b]) - std::imag(alpha[a] * std::conj(alpha[b]));
      const double decay = std::exp(-std::norm(alpha[a] - alpha[b]) * (2.0 * p.n_bar + 1.0) / 2.0);
      phi(a, b) = std::polar(decay, phase);
      phi(b, a) = std::conj(phi(a, b));
    }
  }
  return dephasing::DephasingFactorMatrix(std::move(phi));
}

double max_coherence_decay(const dephasing::DephasingFactorMatrix& phi) {
  double worst = 0.0;
  for (Index i = 0; i < phi.dim(); ++i)
    for (Index j = 0; j < phi.dim(); ++j)
      if (i != j) worst = std::max(worst, std::abs(1.0 - std::abs(phi(i, j))));
  return worst;
}

DephasingSample random_dephasing_sample(Index d_s, RngSeed seed) {
  if (d_s < 1) throw NonPositiveInput("d_system", static_cast<double>(d_s));
  Rng rng = make_rng(seed);
  std::vector<ComplexVector> psi;
  psi.reserve(static_cast<std::size_t>(d_s));
  for (Index i = 0; i < d_s; ++i) psi.push_back(qmat::random_pure_state(2, rng));

  ComplexMatrix phi(d_s, d_s);
  ComplexMatrix coeffs(d_s, 2);
  for (Index i = 0; i < d_s; ++i) {
    for (Index j = 0; j < d_s; ++j) phi(i, j) = psi[static_cast<std::size_t>(j)].dot(psi[static_cast<std::size_t>(i)]);
    coeffs.row(i) = psi[static_cast<std::size_t>(i)].transpose() / std::sqrt(static_cast<double>(d_s));
  }
  phi.diagonal().setOnes();
  return {dephasing::DephasingFactorMatrix(std::move(phi)), witness::negativity_pure(coeffs), std::move(psi)};
}

std::vector<SampleRecord> scan(Index d_s, Index n_samples, RngSeed seed, const witness::EoAOptions& opts,
                               unsigned threads) {
  if (n_samples < 1) throw NonPositiveInput("samples", static_cast<double>(n_samples));
  std::vector<SampleRecord> records(static_cast<std::size_t>(n_samples));
  parallel_for(records.size(), threads, [&](std::size_t k) {
    const RngSeed sample_seed = seed.derive(k);
    const DephasingSample sample = random_dephasing_sample(d_s, sample_seed);
    witness::EoAOptions local = opts;
    local.threads = 1;
    local.seed = RngSeed{sample_seed.value ^ kOptimizerStream};
    records[k] = {witness::q_a(sample.phi, local).q_a, sample.negativity, sample_seed.value};
  });
  return records;
}

}  // namespace deph::models
