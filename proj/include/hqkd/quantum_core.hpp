#pragma once

// Dense statevector / density-matrix engine for registers of at most five
// qubits. Qubit 0 is the least-significant bit of an amplitude index.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hqkd/random_stream.hpp"

namespace hqkd {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 5;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kPsdSlack = 1e-10;

/// Raised for malformed states, bad qubit indices and arity mismatches.
class QuantumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StateAccess;

enum class PauliBasis { X, Y, Z };

char to_char(PauliBasis basis);
PauliBasis pauli_from_char(char c);

class StateVector {
 public:
  /// |0...0> on num_qubits qubits.
  explicit StateVector(int num_qubits = 1);

  /// Validates length 2^n and unit norm (within kNormTolerance).
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);
  static StateVector basis_state(int num_qubits, std::size_t index);
  /// factors[0] becomes qubit 0, factors[1] qubit 1, ...
  static StateVector product(std::span<const StateVector> factors);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  double squared_norm() const;

 private:
  struct Unchecked {};
  StateVector(Unchecked, int num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_;
  std::vector<Complex> amplitudes_;

  friend struct StateAccess;
};

/// Row-major Hermitian, unit-trace matrix of dimension 2^n.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace (within kNormTolerance).
  static DensityMatrix from_entries(int num_qubits, std::vector<Complex> entries);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return entries_; }
  Complex trace() const;
  /// Tr(rho^2).
  double purity() const;

 private:
  DensityMatrix(int num_qubits, std::vector<Complex> entries);

  int num_qubits_;
  std::size_t dim_;
  std::vector<Complex> entries_;
};

enum class GateKind { H, X, S, S_DAGGER, CNOT };

struct Gate {
  GateKind kind;
  /// Row-major, 2x2 for single-qubit gates, 4x4 for CNOT. For CNOT the first
  /// target is the control and maps to the low bit of the local index.
  std::vector<Complex> matrix;

  int arity() const { return kind == GateKind::CNOT ? 2 : 1; }
  Gate adjoint() const;

  static Gate make(GateKind kind);
};

std::string_view to_string(GateKind kind);

StateVector apply_gate(const StateVector& state, const Gate& gate, std::span<const int> targets);
StateVector apply_gate(const StateVector& state, GateKind kind, std::initializer_list<int> targets);

/// (|000> + |111>)/sqrt(2).
StateVector make_ghz();
/// |+> = H|0>.
StateVector make_plus();

struct Measurement {
  int outcome;  // +1 or -1
  StateVector collapsed;
};

/// Projective measurement of one qubit in a Pauli basis. X is measured as H
/// then Z; Y as S-dagger, H, then Z. The collapsed state is rotated back so it
/// is the eigenstate in the original frame.
Measurement measure_pauli(const StateVector& state, int qubit, PauliBasis basis,
                          RandomStream& rng);

/// Probability that measure_pauli returns +1.
double probability_plus(const StateVector& state, int qubit, PauliBasis basis);

/// <psi| P_0 (x) P_1 (x) ... |psi>, bases[i] acting on qubit i.
double expectation_pauli_product(const StateVector& state, std::span<const PauliBasis> bases);
double expectation_pauli_product(const StateVector& state, std::initializer_list<PauliBasis> bases);

DensityMatrix density_from_state(const StateVector& state);

/// Reduced state on `keep`; kept qubits are renumbered in ascending order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Eigenvalues of a density matrix, ascending.
std::vector<double> eigenvalues(const DensityMatrix& rho);

/// -Tr(rho log2 rho) in bits; throws QuantumError if rho has an eigenvalue
/// below -kPsdSlack.
double von_neumann_entropy(const DensityMatrix& rho);

/// sqrt(<psi|rho|psi>).
double fidelity_pure(const StateVector& psi, const DensityMatrix& rho);

}  // namespace hqkd
