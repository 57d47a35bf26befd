#pragma once

// Built-in physical models.
//
// Trapped ions: two system qubits control a qubit environment through
//   H = |01><01| (x) n1.sigma + |10><10| (x) sigma_y + |11><11| (x) n2.sigma
// with n1 = (sqrt(3)/2, -1/2, 0), n2 = (-sqrt(3)/2, -1/2, 0). Qubit 0 is the
// most significant bit of every basis index.
//
// Gravity: a two-particle superposition couples to a harmonic oscillator,
//   H / hbar = w a^dagger a + sum_i w_m sigma_z,i + g sigma_z,i (a + a^dagger),
// so each branch s = (s1, s2) displaces the thermal oscillator.

#include <array>
#include <optional>
#include <vector>

#include "deph/dephasing.hpp"
#include "deph/eoa.hpp"
#include "deph/qmat.hpp"

namespace deph::models {

// ---- circuits -------------------------------------------------------------

enum class GateKind { RZ, RN, X, H, CZ, CCRZ, CCRN };

using Axis = std::array<double, 3>;

struct Gate {
  GateKind kind = GateKind::X;
  double theta = 0.0;
  Axis axis{0.0, 0.0, 1.0};  // RN and CCRN only
  /// Controls first, target last. CZ is symmetric; qubits[0] is the control.
  std::vector<int> qubits;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  Circuit& rz(int q, double theta);
  Circuit& rn(int q, double theta, const Axis& axis);
  Circuit& x(int q);
  Circuit& h(int q);
  Circuit& cz(int a, int b);
  Circuit& ccrz(int c0, int c1, int t, double theta);
  Circuit& ccrn(int c0, int c1, int t, double theta, const Axis& axis);
  Circuit& append(const Circuit& other);
};

/// cos(theta/2) I - i sin(theta/2) n.sigma.
ComplexMatrix rotation(double theta, const Axis& axis);

/// Full 2^n unitary, gates applied in sequence order. Throws IndexOutOfRange
/// for bad qubit indices and DimensionMismatch for non-unit axes.
ComplexMatrix circuit_unitary(const Circuit& c);

/// min over phi of ||U - e^{i phi} V||_F / sqrt(dim).
double phase_invariant_distance(const ComplexMatrix& u, const ComplexMatrix& v);

/// CCRZ(theta) on (c0, c1, t) = (0, 1, 2) from four CZ gates, four x-axis
/// rotations by +-theta/4 and two Hadamards on the target.
Circuit ccrz_decomposition(double theta);

/// Doubly controlled rotation about an axis in the xy plane from four CZ
/// gates and four rotations by +-theta/4. Throws DimensionMismatch when the
/// axis has a z component.
Circuit ccrn_decomposition(int c0, int c1, int t, double theta, const Axis& axis);

/// Gate-level trapped-ion evolution for time t = theta / 2: equals
/// sum_i |i><i| (x) V_i(t) up to global phase.
Circuit experiment_circuit(double theta);

// ---- trapped-ion model ------------------------------------------------------

inline constexpr Axis kAxisY{0.0, 1.0, 0.0};
inline const Axis kAxisN1{0.8660254037844386, -0.5, 0.0};
inline const Axis kAxisN2{-0.8660254037844386, -0.5, 0.0};

/// Axis coupled to system label i (0 = |00>, 1 = |01>, 2 = |10>, 3 = |11>);
/// nullopt for |00>. Throws IndexOutOfRange outside 0..3.
std::optional<Axis> trapped_ion_axis(int label);

/// V_00, V_01, V_10, V_11 with V = cos t I - i sin t n.sigma.
std::vector<ComplexMatrix> trapped_ion_unitaries(double t);

/// 8 x 8 Hamiltonian above (system qubits first).
ComplexMatrix trapped_ion_hamiltonian();

/// Channel with environment |0><0|.
dephasing::PureDephasingChannel trapped_ion_channel(double t);

// ---- tomography -------------------------------------------------------------

/// Two-qubit Pauli tomography by linear inversion. For each of the nine
/// settings {X,Y,Z}^2, `shots` outcomes are drawn from the Born distribution;
/// single-qubit expectations average the three settings that measure that
/// qubit. The estimate is Hermitian with unit trace but may be non-PSD.
/// Throws NotAState.
ComplexMatrix simulate_tomography(const ComplexMatrix& rho, int shots, RngSeed seed);

/// Same reconstruction with exact expectation values.
ComplexMatrix tomography_exact(const ComplexMatrix& rho);

// ---- gravity ---------------------------------------------------------------

namespace constants {
inline constexpr double kG = 6.674e-11;
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kBoltzmann = 1.380649e-23;
}  // namespace constants

struct GravityInputs {
  double density = 2400.0;      // kg m^-3
  double r_particle = 70e-9;    // m
  double r_osc = 7e-6;          // m
  double d = 175e-6;            // m
  double d0 = 500e-9;           // m
  double omega = 0.01;          // rad/s, shifted frequency unless omega_is_bare
  double temperature = 1e-3;    // K
  bool omega_is_bare = false;
};

struct GravityParams {
  GravityInputs inputs;
  double m = 0.0;          // particle mass
  double big_m = 0.0;      // oscillator mass
  double omega_tilde = 0.0;
  double g = 0.0;
  double omega_m = 0.0;
  double n_bar = 0.0;

  double t_star() const;  // pi / omega_tilde
};

/// Throws NonPositiveInput naming the offending field.
GravityParams gravity_params(const GravityInputs& in);

/// 4 x 4 dephasing matrix on branches (++, +-, -+, --). Closed form of the
/// thermal conditional-displacement dynamics.
dephasing::DephasingFactorMatrix gravity_phi(const GravityParams& p, double t);

/// max |1 - |Phi[s][s']|| over off-diagonal entries.
double max_coherence_decay(const dephasing::DephasingFactorMatrix& phi);

// ---- random pure dephasing maps ------------------------------------------------

struct DephasingSample {
  dephasing::DephasingFactorMatrix phi;
  double negativity = 0.0;
  std::vector<ComplexVector> env_states;  // psi_i = V_i |0>
};

/// d_S Haar-random qubit states psi_i; Phi[i][j] = <psi_j|psi_i> and the
/// negativity of (1/sqrt(d_S)) sum_i |i> (x) |psi_i>.
DephasingSample random_dephasing_sample(Index d_s, RngSeed seed);

struct SampleRecord {
  double q_a = 0.0;
  double negativity = 0.0;
  std::uint64_t seed = 0;
};

/// Sample k draws its map from seed.derive(k) and its optimizer restarts from
/// a second stream derived from the same value.
/// Records are ordered by sample index regardless of `threads`.
std::vector<SampleRecord> scan(Index d_s, Index n_samples, RngSeed seed, const witness::EoAOptions& opts = {},
                               unsigned threads = 1);

}  // namespace deph::models
