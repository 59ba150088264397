#include "hqkd/quantum_core.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hqkd/noise.hpp"

using namespace hqkd;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void expect_state_near(const StateVector& psi, const std::vector<Complex>& ref, double tol = 1e-12) {
  ASSERT_EQ(psi.dimension(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(psi[i].real(), ref[i].real(), tol) << "i=" << i << " (real)";
    EXPECT_NEAR(psi[i].imag(), ref[i].imag(), tol) << "i=" << i << " (imag)";
  }
}

// 4-sigma half-width for a Bernoulli(p) frequency over n shots.
double four_sigma(double p, int n) { return 4.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace

// ---------- construction ----------

TEST(StateVector, DefaultIsAllZeros) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_DOUBLE_EQ(s[0].real(), 1.0);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
}

TEST(StateVector, RejectsBadSizesAndNorms) {
  EXPECT_THROW(StateVector(0), QuantumError);
  EXPECT_THROW(StateVector(kMaxQubits + 1), QuantumError);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), QuantumError);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), QuantumError);
  EXPECT_NO_THROW(StateVector::from_amplitudes({kInvSqrt2, Complex(0.0, kInvSqrt2)}));
}

TEST(StateVector, ProductPutsFirstFactorOnQubitZero) {
  const std::vector<StateVector> factors{StateVector::basis_state(1, 1), StateVector(1)};
  const auto s = StateVector::product(factors);
  // qubit 0 = |1>, qubit 1 = |0>  ->  index 1
  expect_state_near(s, {0.0, 1.0, 0.0, 0.0});
}

// ---------- make_ghz ----------

TEST(MakeGhz, Amplitudes) {
  const auto g = make_ghz();
  ASSERT_EQ(g.num_qubits(), 3);
  std::vector<Complex> ref(8, 0.0);
  ref[0] = ref[7] = kInvSqrt2;
  expect_state_near(g, ref);
  EXPECT_NEAR(g.squared_norm(), 1.0, 1e-12);
}

TEST(MakeGhz, ComputationalShotsAreOnly000Or111) {
  const auto g = make_ghz();
  RandomStream rng(11);
  const int shots = 10000;
  int all_zero = 0;
  for (int i = 0; i < shots; ++i) {
    auto s = g;
    int pattern = 0;
    for (int q = 0; q < 3; ++q) {
      auto m = measure_pauli(s, q, PauliBasis::Z, rng);
      if (m.outcome == -1) pattern |= 1 << q;
      s = std::move(m.collapsed);
    }
    ASSERT_TRUE(pattern == 0 || pattern == 7) << "pattern " << pattern;
    all_zero += pattern == 0;
  }
  // 0.5 +- 3 sigma.
  EXPECT_NEAR(all_zero / double(shots), 0.5, 3.0 * std::sqrt(0.25 / shots));
}

// ---------- apply_gate ----------

TEST(ApplyGate, HadamardOnZero) {
  expect_state_near(apply_gate(StateVector(1), GateKind::H, {0}), {kInvSqrt2, kInvSqrt2});
}

TEST(ApplyGate, CnotControlIsFirstTarget) {
  // |01> (qubit 0 set) -> |11>
  const auto s = apply_gate(StateVector::basis_state(2, 1), GateKind::CNOT, {0, 1});
  expect_state_near(s, {0.0, 0.0, 0.0, 1.0});
  // control clear: unchanged
  const auto t = apply_gate(StateVector::basis_state(2, 2), GateKind::CNOT, {0, 1});
  expect_state_near(t, {0.0, 0.0, 1.0, 0.0});
}

TEST(ApplyGate, CircuitBuildsGhz) {
  StateVector s(3);
  s = apply_gate(s, GateKind::H, {0});
  s = apply_gate(s, GateKind::CNOT, {0, 1});
  s = apply_gate(s, GateKind::CNOT, {1, 2});
  const auto g = make_ghz();
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(s[i] - g[i]), 0.0, 1e-12);
}

TEST(ApplyGate, Errors) {
  const StateVector s(2);
  EXPECT_THROW(apply_gate(s, GateKind::H, {2}), QuantumError);
  EXPECT_THROW(apply_gate(s, GateKind::H, {-1}), QuantumError);
  EXPECT_THROW(apply_gate(s, GateKind::H, {0, 1}), QuantumError);
  EXPECT_THROW(apply_gate(s, GateKind::CNOT, {0}), QuantumError);
  EXPECT_THROW(apply_gate(s, GateKind::CNOT, {1, 1}), QuantumError);
}

TEST(Gate, AllGatesUnitary) {
  for (auto kind : {GateKind::H, GateKind::X, GateKind::S, GateKind::S_DAGGER, GateKind::CNOT}) {
    const auto g = Gate::make(kind);
    const auto a = g.adjoint();
    const std::size_t d = g.arity() == 1 ? 2 : 4;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Complex acc{};
        for (std::size_t k = 0; k < d; ++k) acc += a.matrix[i * d + k] * g.matrix[k * d + j];
        EXPECT_NEAR(std::abs(acc - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-12) << to_string(kind);
      }
  }
  EXPECT_EQ(Gate::make(GateKind::S_DAGGER).adjoint().kind, GateKind::S);
}

TEST(ApplyGate, NormPreservedOverRandomCircuits) {
  RandomStream rng(5);
  const GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::S, GateKind::S_DAGGER, GateKind::CNOT};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % kMaxQubits);
    StateVector s(n);
    for (int step = 0; step < 30; ++step) {
      const auto kind = kinds[rng.next() % 5];
      const int a = static_cast<int>(rng.next() % n);
      if (kind == GateKind::CNOT) {
        if (n < 2) continue;
        int b = static_cast<int>(rng.next() % n);
        if (b == a) b = (a + 1) % n;
        s = apply_gate(s, kind, {a, b});
      } else {
        s = apply_gate(s, kind, {a});
      }
      ASSERT_LT(std::abs(s.squared_norm() - 1.0), 1e-12);
    }
  }
}

// ---------- measure_pauli ----------

TEST(MeasurePauli, Eigenstates) {
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    auto m = measure_pauli(StateVector(1), 0, PauliBasis::Z, rng);
    EXPECT_EQ(m.outcome, +1);
    expect_state_near(m.collapsed, {1.0, 0.0});
    EXPECT_EQ(measure_pauli(make_plus(), 0, PauliBasis::X, rng).outcome, +1);
  }
}

TEST(MeasurePauli, YEigenstateFromCircuit) {
  // S H |0> = |+i>, the +1 eigenvector of sigma_y.
  const auto plus_i = apply_gate(make_plus(), GateKind::S, {0});
  EXPECT_NEAR(probability_plus(plus_i, 0, PauliBasis::Y), 1.0, 1e-12);
  EXPECT_NEAR(expectation_pauli_product(plus_i, {PauliBasis::Y}), 1.0, 1e-12);
  RandomStream rng(2);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(measure_pauli(plus_i, 0, PauliBasis::Y, rng).outcome, +1);
}

TEST(MeasurePauli, CollapseIsIdempotent) {
  RandomStream rng(3);
  const auto g = make_ghz();
  for (int i = 0; i < 500; ++i) {
    for (auto basis : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
      const int q = i % 3;
      const auto first = measure_pauli(g, q, basis, rng);
      EXPECT_NEAR(first.collapsed.squared_norm(), 1.0, 1e-12);
      const auto second = measure_pauli(first.collapsed, q, basis, rng);
      ASSERT_EQ(second.outcome, first.outcome);
    }
  }
}

TEST(MeasurePauli, BornRuleFrequencies) {
  // A state with distinct probabilities in every basis.
  const auto psi = StateVector::from_amplitudes(
      {Complex(std::sqrt(0.7), 0.0), Complex(std::sqrt(0.3) * 0.6, std::sqrt(0.3) * 0.8)});
  RandomStream rng(4);
  const int n = 10000;
  for (auto basis : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
    const double p = probability_plus(psi, 0, basis);
    int plus = 0;
    for (int i = 0; i < n; ++i) plus += measure_pauli(psi, 0, basis, rng).outcome == +1;
    EXPECT_NEAR(plus / double(n), p, four_sigma(p, n)) << to_char(basis);
  }
}

TEST(MeasurePauli, RejectsBadQubit) {
  RandomStream rng(0);
  EXPECT_THROW(measure_pauli(make_ghz(), 3, PauliBasis::X, rng), QuantumError);
}

// ---------- expectation_pauli_product ----------

TEST(Expectation, GhzStabilizers) {
  const auto g = make_ghz();
  using enum PauliBasis;
  EXPECT_NEAR(expectation_pauli_product(g, {X, X, X}), 1.0, 1e-12);
  EXPECT_NEAR(expectation_pauli_product(g, {X, Y, Y}), -1.0, 1e-12);
  EXPECT_NEAR(expectation_pauli_product(g, {Y, X, Y}), -1.0, 1e-12);
  EXPECT_NEAR(expectation_pauli_product(g, {Y, Y, X}), -1.0, 1e-12);
}

TEST(Expectation, GhzAllYIsZero) {
  // YYY anticommutes with the XXX stabilizer, so <GHZ|YYY|GHZ> vanishes.
  using enum PauliBasis;
  EXPECT_NEAR(expectation_pauli_product(make_ghz(), {Y, Y, Y}), 0.0, 1e-12);
}

TEST(Expectation, BasisCountMismatch) {
  using enum PauliBasis;
  EXPECT_THROW(expectation_pauli_product(make_ghz(), {X, X}), QuantumError);
}

TEST(Expectation, AgreesWithSampledProducts) {
  const auto g = make_ghz();
  RandomStream rng(8);
  const int n = 10000;
  using enum PauliBasis;
  const std::vector<std::array<PauliBasis, 3>> cases = {
      {X, X, X}, {X, Y, Y}, {Y, Y, X}, {Y, Y, Y}, {X, X, Y}, {Z, Z, X}};
  for (const auto& bases : cases) {
    const double exact = expectation_pauli_product(g, bases);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      auto s = g;
      int product = 1;
      for (int q = 0; q < 3; ++q) {
        auto m = measure_pauli(s, q, bases[q], rng);
        product *= m.outcome;
        s = std::move(m.collapsed);
      }
      sum += product;
    }
    // Products are +-1, so the variance is 1 - mean^2.
    const double sigma = std::sqrt(std::max(1.0 - exact * exact, 1e-12) / n);
    EXPECT_NEAR(sum / n, exact, 4.0 * sigma + 1e-12);
  }
}

// ---------- density matrices ----------

TEST(DensityFromState, ZeroKet) {
  const auto rho = density_from_state(StateVector(1));
  EXPECT_DOUBLE_EQ(rho(0, 0).real(), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(rho(0, 1)), 0.0);
  EXPECT_DOUBLE_EQ(std::abs(rho(1, 1)), 0.0);
}

TEST(DensityFromState, GhzPattern) {
  const auto rho = density_from_state(make_ghz());
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const bool corner = (i == 0 || i == 7) && (j == 0 || j == 7);
      EXPECT_NEAR(std::abs(rho(i, j) - Complex(corner ? 0.5 : 0.0)), 0.0, 1e-12);
    }
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
}

TEST(DensityMatrix, ValidatesEntries) {
  EXPECT_THROW(DensityMatrix::from_entries(1, {1.0, 0.0, 0.0}), QuantumError);
  EXPECT_THROW(DensityMatrix::from_entries(1, {0.5, 0.1, 0.0, 0.5}), QuantumError);  // not Hermitian
  EXPECT_THROW(DensityMatrix::from_entries(1, {0.6, 0.0, 0.0, 0.6}), QuantumError);  // trace
}

TEST(PartialTrace, GhzSingleQubitIsMaximallyMixed) {
  const auto rho = density_from_state(make_ghz());
  for (int q = 0; q < 3; ++q) {
    const auto r = partial_trace(rho, {q});
    EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(r(1, 1).real(), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-12);
  }
}

TEST(PartialTrace, GhzTwoQubits) {
  const auto r = partial_trace(density_from_state(make_ghz()), {0, 1});
  ASSERT_EQ(r.dimension(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double expected = (i == j && (i == 0 || i == 3)) ? 0.5 : 0.0;
      EXPECT_NEAR(std::abs(r(i, j) - Complex(expected)), 0.0, 1e-12);
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
  const std::vector<StateVector> factors{StateVector(1), make_plus()};
  const auto r = partial_trace(density_from_state(StateVector::product(factors)), {1});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(r(i, j).real(), 0.5, 1e-12);
}

TEST(PartialTrace, RejectsEmptyOrFullKeep) {
  const auto rho = density_from_state(make_ghz());
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), QuantumError);
  EXPECT_THROW(partial_trace(rho, {0, 1, 2}), QuantumError);
  EXPECT_THROW(partial_trace(rho, {0, 0}), QuantumError);
  EXPECT_THROW(partial_trace(rho, {5}), QuantumError);
}

// ---------- entropy ----------

TEST(VonNeumannEntropy, PureStateIsZero) {
  EXPECT_NEAR(von_neumann_entropy(density_from_state(make_ghz())), 0.0, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(density_from_state(make_plus())), 0.0, 1e-9);
}

TEST(VonNeumannEntropy, MaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(3)), 3.0, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(5)), 5.0, 1e-9);
}

TEST(VonNeumannEntropy, EveryGhzBipartitionGivesOneBit) {
  const auto rho = density_from_state(make_ghz());
  for (int q = 0; q < 3; ++q) EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, {q})), 1.0, 1e-9);
  for (auto keep : {std::array{0, 1}, std::array{0, 2}, std::array{1, 2}})
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, keep)), 1.0, 1e-9);
}

TEST(VonNeumannEntropy, RejectsNonPsd) {
  // Hermitian, unit trace, eigenvalues 1.5 and -0.5.
  const auto bad = DensityMatrix::from_entries(1, {0.5, 1.0, 1.0, 0.5});
  EXPECT_THROW(von_neumann_entropy(bad), QuantumError);
}

// ---------- fidelity ----------

TEST(FidelityPure, Cases) {
  const auto g = make_ghz();
  EXPECT_NEAR(fidelity_pure(g, density_from_state(g)), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_pure(g, DensityMatrix::maximally_mixed(3)), std::sqrt(1.0 / 8.0), 1e-12);
  EXPECT_NEAR(fidelity_pure(g, depolarize(density_from_state(g), 0.1)), std::sqrt(0.9125), 1e-12);
  EXPECT_NEAR(std::sqrt(0.9125), 0.95525, 5e-6);
  EXPECT_THROW(fidelity_pure(make_plus(), density_from_state(g)), QuantumError);
}

TEST(FidelityPure, DecreasesWithDepolarizingStrength) {
  const auto g = make_ghz();
  const auto rho = density_from_state(g);
  double prev = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double f = fidelity_pure(g, depolarize(rho, i / 100.0));
    EXPECT_LT(f, prev);
    prev = f;
  }
}
