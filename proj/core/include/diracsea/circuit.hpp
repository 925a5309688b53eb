#pragma once

// Jordan-Wigner qubit image of the fermionic QCA. Two qubits per site in the
// order (0,l),(0,r),(1,l),(1,r),...; qubit q is bit q of the basis index.
// Occupied means |1>.

#include "diracsea/lattice.hpp"
#include "diracsea/spinor.hpp"
#include "diracsea/walk1d.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace diracsea {

/// Raised for register sizes the circuit layout or the dense simulator does not support.
class UnsupportedSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind { S, Wprime, Rtheta, Wdoubleprime };

std::string_view to_string(GateKind kind);

/// Two-qubit gate. The 4x4 matrix acts on the local basis index 2 b(q1) + b(q2).
struct GateSpec {
  GateKind kind;
  std::size_t q1;
  std::size_t q2;
  Mat4 matrix;
};

/// S: fermionic swap. W': mass mixing c = cos(mass_phase), s = sin(mass_phase)
/// with -1 on |11>. R_theta: rotation by theta/2 in the one-particle block.
/// W'' = W' R_theta^dagger.
Mat4 gate_matrix(GateKind kind, double mass_phase = 0.0, double theta = 0.0);

std::size_t qubit_index(std::size_t site, Chirality component);

/// Dense state vector over 2N qubits, N <= 7.
class RegisterState {
 public:
  static constexpr std::size_t kMaxSites = 7;

  static RegisterState vacuum(std::size_t sites);
  static RegisterState basis(std::size_t sites, std::uint64_t bits);
  /// Throws std::invalid_argument unless the vector has unit norm within 1e-12.
  static RegisterState from_vector(std::size_t sites, Eigen::VectorXcd vector);

  std::size_t sites() const { return sites_; }
  std::size_t qubits() const { return 2 * sites_; }
  std::size_t dimension() const { return static_cast<std::size_t>(vec_.size()); }
  const Eigen::VectorXcd& vector() const { return vec_; }
  cplx amplitude(std::uint64_t bits) const { return vec_[static_cast<Eigen::Index>(bits)]; }
  double norm() const { return vec_.squaredNorm(); }

  /// In place. Throws std::out_of_range for bad or coinciding qubit indices.
  void apply(const GateSpec& gate);
  /// Exchanges the l and r qubits of every site; a relabeling of wires.
  void swap_chiralities();

 private:
  RegisterState(std::size_t sites, Eigen::VectorXcd vector);

  std::size_t sites_;
  Eigen::VectorXcd vec_;
};

struct QubitCircuit {
  std::size_t sites = 0;
  std::vector<GateSpec> gates;
  /// The final on-site gate leaves each particle on the opposite-chirality
  /// wire, so the outputs are read with l and r exchanged.
  bool swap_output_chiralities = true;
};

/// Dirac: S on ((n,r),(n+1,l)) cyclically, then W' on ((n,l),(n,r)).
/// Modified: R_theta^dagger on-site, S layer, on-site S, R_{2 theta}
/// on-site, S layer, then W'' on-site. Requires even N with 2 <= N <= 7.
QubitCircuit build_circuit(std::size_t sites, const WalkParams& params);

RegisterState apply_circuit(RegisterState state, const QubitCircuit& circuit);

/// Full 4^N x 4^N matrix of a circuit, one basis column at a time.
Eigen::MatrixXcd circuit_unitary(const QubitCircuit& circuit);

/// psi^{a dagger}_n = A^dagger_{q(n,a)} prod_{q' < q(n,a)} Z_{q'} as a dense matrix. N <= 5.
Eigen::MatrixXcd jw_creation(std::size_t site, Chirality component, std::size_t sites);

/// Fermionic QCA unitary assembled from the JW field operators: W from the
/// exponential of the on-site quadratic form, T as the mode permutation
/// psi_{n,r} -> psi_{n+1,r}, psi_{n,l} -> psi_{n-1,l}. Hops that wrap around
/// the ring carry boundary_sign (+1 or -1). N <= 5.
Eigen::MatrixXcd qca_reference_unitary(std::size_t sites, const WalkParams& params,
                                       int boundary_sign);

/// Total occupation operator as the diagonal of the 4^N basis.
Eigen::VectorXd occupation_numbers(std::size_t sites);

struct SectorDeviation {
  int parity = 0;         // 0 even, 1 odd
  int boundary_sign = 1;  // wrap-around sign of the reference that matches this sector
  cplx phase = 1.0;       // global phase applied to the reference
  double deviation = 0.0;
};

struct EquivalenceReport {
  std::size_t sites = 0;
  std::array<SectorDeviation, 2> sectors{};
  double leakage = 0.0;  // largest circuit element between different parities
  double max_deviation() const;
};

/// Compares the circuit with the reference unitary separately on the even and
/// odd parity sectors, the reference boundary sign being (-1)^(P-1). N <= 4.
EquivalenceReport equivalence_report(std::size_t sites, const WalkParams& params);

/// max |actual - e^{i phi} reference| with phi = arg sum conj(reference) actual.
SectorDeviation compare_up_to_phase(const Eigen::MatrixXcd& actual,
                                    const Eigen::MatrixXcd& reference);

}  // namespace diracsea
