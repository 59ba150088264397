#include "hqkd/quantum_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hqkd/hermitian_eigen.hpp"

namespace hqkd {

struct StateAccess {
  static StateVector adopt(int num_qubits, std::vector<Complex> amplitudes) {
    return StateVector(StateVector::Unchecked{}, num_qubits, std::move(amplitudes));
  }
  static std::vector<Complex>& amplitudes(StateVector& s) { return s.amplitudes_; }
};

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const Complex kI{0.0, 1.0};

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw QuantumError("qubit count " + std::to_string(n) + " outside [1, " +
                       std::to_string(kMaxQubits) + "]");
}

void check_qubit_index(int qubit, int n) {
  if (qubit < 0 || qubit >= n)
    throw QuantumError("qubit index " + std::to_string(qubit) + " out of range for " +
                       std::to_string(n) + "-qubit register");
}

int log2_exact(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) return -1;
  return n;
}

using Matrix2 = std::array<Complex, 4>;

Matrix2 pauli_matrix(PauliBasis basis) {
  switch (basis) {
    case PauliBasis::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliBasis::Y: return {0.0, -kI, kI, 0.0};
    case PauliBasis::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

// In-place single-qubit update on raw amplitudes.
void apply_single(std::vector<Complex>& amps, std::span<const Complex> m, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | mask];
    amps[i] = m[0] * a0 + m[1] * a1;
    amps[i | mask] = m[2] * a0 + m[3] * a1;
  }
}

void apply_single(std::vector<Complex>& amps, GateKind kind, int qubit) {
  const auto gate = Gate::make(kind);
  apply_single(amps, gate.matrix, qubit);
}

// Rotation taking the +1 eigenvector of `basis` to |0>.
void rotate_into(std::vector<Complex>& amps, PauliBasis basis, int qubit) {
  if (basis == PauliBasis::Y) apply_single(amps, GateKind::S_DAGGER, qubit);
  if (basis != PauliBasis::Z) apply_single(amps, GateKind::H, qubit);
}

void rotate_back(std::vector<Complex>& amps, PauliBasis basis, int qubit) {
  if (basis != PauliBasis::Z) apply_single(amps, GateKind::H, qubit);
  if (basis == PauliBasis::Y) apply_single(amps, GateKind::S, qubit);
}

double zero_probability(std::span<const Complex> amps, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (!(i & mask)) p += std::norm(amps[i]);
  return p;
}

}  // namespace

char to_char(PauliBasis basis) {
  switch (basis) {
    case PauliBasis::X: return 'X';
    case PauliBasis::Y: return 'Y';
    case PauliBasis::Z: return 'Z';
  }
  return '?';
}

PauliBasis pauli_from_char(char c) {
  switch (c) {
    case 'X': return PauliBasis::X;
    case 'Y': return PauliBasis::Y;
    case 'Z': return PauliBasis::Z;
    default: throw QuantumError(std::string("unknown Pauli basis '") + c + "'");
  }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
  amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const int n = log2_exact(amplitudes.size());
  if (n < 1) throw QuantumError("amplitude count must be a power of two >= 2");
  check_qubit_count(n);
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw QuantumError("state is not normalized (squared norm " + std::to_string(norm) + ")");
  return StateVector(Unchecked{}, n, std::move(amplitudes));
}

StateVector StateVector::basis_state(int num_qubits, std::size_t index) {
  StateVector s(num_qubits);
  if (index >= s.dimension()) throw QuantumError("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::product(std::span<const StateVector> factors) {
  if (factors.empty()) throw QuantumError("product of zero factors");
  int total = 0;
  for (const auto& f : factors) total += f.num_qubits();
  check_qubit_count(total);

  std::vector<Complex> amps{1.0};
  int shift = 0;
  for (const auto& f : factors) {
    std::vector<Complex> next(amps.size() * f.dimension());
    for (std::size_t hi = 0; hi < f.dimension(); ++hi)
      for (std::size_t lo = 0; lo < amps.size(); ++lo) next[(hi << shift) | lo] = f[hi] * amps[lo];
    amps = std::move(next);
    shift += f.num_qubits();
  }
  return StateVector(Unchecked{}, total, std::move(amps));
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int num_qubits, std::vector<Complex> entries)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_entries(int num_qubits, std::vector<Complex> entries) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (entries.size() != dim * dim) throw QuantumError("density matrix entry count mismatch");

  Complex tr{};
  for (std::size_t i = 0; i < dim; ++i) {
    tr += entries[i * dim + i];
    for (std::size_t j = i; j < dim; ++j) {
      if (std::abs(entries[i * dim + j] - std::conj(entries[j * dim + i])) > kNormTolerance)
        throw QuantumError("density matrix is not Hermitian");
    }
  }
  if (std::abs(tr - 1.0) > kNormTolerance) throw QuantumError("density matrix trace is not 1");
  return DensityMatrix(num_qubits, std::move(entries));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0 / static_cast<double>(dim);
  return DensityMatrix(num_qubits, std::move(e));
}

Complex DensityMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return s;
}

// ---------------------------------------------------------------------------
// Gates

Gate Gate::make(GateKind kind) {
  switch (kind) {
    case GateKind::H: return {kind, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}};
    case GateKind::X: return {kind, {0.0, 1.0, 1.0, 0.0}};
    case GateKind::S: return {kind, {1.0, 0.0, 0.0, kI}};
    case GateKind::S_DAGGER: return {kind, {1.0, 0.0, 0.0, -kI}};
    case GateKind::CNOT:
      return {kind, {1.0, 0.0, 0.0, 0.0,  //
                     0.0, 0.0, 0.0, 1.0,  //
                     0.0, 0.0, 1.0, 0.0,  //
                     0.0, 1.0, 0.0, 0.0}};
  }
  throw QuantumError("unknown gate kind");
}

Gate Gate::adjoint() const {
  const std::size_t d = arity() == 1 ? 2 : 4;
  Gate g{kind, std::vector<Complex>(d * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g.matrix[i * d + j] = std::conj(matrix[j * d + i]);
  if (kind == GateKind::S) g.kind = GateKind::S_DAGGER;
  if (kind == GateKind::S_DAGGER) g.kind = GateKind::S;
  return g;
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::S: return "S";
    case GateKind::S_DAGGER: return "S_DAGGER";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

StateVector apply_gate(const StateVector& state, const Gate& gate, std::span<const int> targets) {
  const int arity = gate.arity();
  if (static_cast<int>(targets.size()) != arity)
    throw QuantumError("gate " + std::string(to_string(gate.kind)) + " expects " +
                       std::to_string(arity) + " target(s), got " + std::to_string(targets.size()));
  for (int t : targets) check_qubit_index(t, state.num_qubits());
  if (arity == 2 && targets[0] == targets[1]) throw QuantumError("gate targets must be distinct");
  const std::size_t local_dim = std::size_t{1} << arity;
  if (gate.matrix.size() != local_dim * local_dim) throw QuantumError("gate matrix size mismatch");

  std::size_t target_mask = 0;
  for (int t : targets) target_mask |= std::size_t{1} << t;

  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  std::array<std::size_t, 4> idx{};
  for (std::size_t base = 0; base < in.size(); ++base) {
    if (base & target_mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) {
      std::size_t i = base;
      for (int j = 0; j < arity; ++j)
        if (l & (std::size_t{1} << j)) i |= std::size_t{1} << targets[j];
      idx[l] = i;
    }
    for (std::size_t r = 0; r < local_dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < local_dim; ++c) acc += gate.matrix[r * local_dim + c] * in[idx[c]];
      out[idx[r]] = acc;
    }
  }
  return StateAccess::adopt(state.num_qubits(), std::move(out));
}

StateVector apply_gate(const StateVector& state, GateKind kind, std::initializer_list<int> targets) {
  return apply_gate(state, Gate::make(kind), std::span<const int>(targets.begin(), targets.size()));
}

StateVector make_ghz() {
  StateVector s(3);
  s = apply_gate(s, GateKind::H, {0});
  s = apply_gate(s, GateKind::CNOT, {0, 1});
  s = apply_gate(s, GateKind::CNOT, {1, 2});
  return s;
}

StateVector make_plus() { return apply_gate(StateVector(1), GateKind::H, {0}); }

// ---------------------------------------------------------------------------
// Measurement and expectation values

double probability_plus(const StateVector& state, int qubit, PauliBasis basis) {
  check_qubit_index(qubit, state.num_qubits());
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  rotate_into(amps, basis, qubit);
  return std::clamp(zero_probability(amps, qubit), 0.0, 1.0);
}

Measurement measure_pauli(const StateVector& state, int qubit, PauliBasis basis,
                          RandomStream& rng) {
  check_qubit_index(qubit, state.num_qubits());
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  rotate_into(amps, basis, qubit);

  const double p_plus = zero_probability(amps, qubit);
  int outcome = rng.uniform() < p_plus ? +1 : -1;
  // Rounding can leave a draw on a branch of zero weight.
  if (outcome == -1 && p_plus >= 1.0) outcome = +1;
  const double kept = outcome == +1 ? p_plus : 1.0 - p_plus;

  const std::size_t mask = std::size_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(kept);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool is_one = (i & mask) != 0;
    if (is_one == (outcome == +1)) amps[i] = 0.0;
    else amps[i] *= scale;
  }
  rotate_back(amps, basis, qubit);
  return {outcome, StateAccess::adopt(state.num_qubits(), std::move(amps))};
}

double expectation_pauli_product(const StateVector& state, std::span<const PauliBasis> bases) {
  if (static_cast<int>(bases.size()) != state.num_qubits())
    throw QuantumError("expected " + std::to_string(state.num_qubits()) + " bases, got " +
                       std::to_string(bases.size()));
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (int q = 0; q < state.num_qubits(); ++q) {
    const auto m = pauli_matrix(bases[q]);
    apply_single(amps, m, q);
  }
  Complex acc{};
  const auto psi = state.amplitudes();
  for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * amps[i];
  return acc.real();
}

double expectation_pauli_product(const StateVector& state, std::initializer_list<PauliBasis> bases) {
  return expectation_pauli_product(state, std::span<const PauliBasis>(bases.begin(), bases.size()));
}

// ---------------------------------------------------------------------------
// Density matrices

DensityMatrix density_from_state(const StateVector& state) {
  const auto psi = state.amplitudes();
  const std::size_t d = psi.size();
  std::vector<Complex> e(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) e[i * d + j] = psi[i] * std::conj(psi[j]);
  return DensityMatrix::from_entries(state.num_qubits(), std::move(e));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty() || static_cast<int>(kept.size()) >= n)
    throw QuantumError("partial_trace: keep set must be a nonempty strict subset");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw QuantumError("partial_trace: duplicate qubit in keep set");
  for (int q : kept) check_qubit_index(q, n);

  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  auto scatter = [](std::size_t local, const std::vector<int>& qubits) {
    std::size_t full = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      if (local & (std::size_t{1} << j)) full |= std::size_t{1} << qubits[j];
    return full;
  };

  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<Complex> out(dk * dk);
  for (std::size_t r = 0; r < dk; ++r) {
    const std::size_t row_base = scatter(r, kept);
    for (std::size_t c = 0; c < dk; ++c) {
      const std::size_t col_base = scatter(c, kept);
      Complex acc{};
      for (std::size_t t = 0; t < dt; ++t) {
        const std::size_t tb = scatter(t, traced);
        acc += rho(row_base | tb, col_base | tb);
      }
      out[r * dk + c] = acc;
    }
  }
  return DensityMatrix::from_entries(static_cast<int>(kept.size()), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  return hermitian_eigenvalues(rho.entries(), rho.dimension());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : eigenvalues(rho)) {
    if (lambda < -kPsdSlack)
      throw QuantumError("density matrix has negative eigenvalue " + std::to_string(lambda));
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dimension() != rho.dimension()) throw QuantumError("fidelity_pure: dimension mismatch");
  const auto v = psi.amplitudes();
  const std::size_t d = v.size();
  Complex acc{};
  for (std::size_t i = 0; i < d; ++i) {
    Complex row{};
    for (std::size_t j = 0; j < d; ++j) row += rho(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return std::sqrt(std::clamp(acc.real(), 0.0, 1.0));
}

}  // namespace hqkd
