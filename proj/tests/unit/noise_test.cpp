#include "hqkd/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "hqkd/quantum_core.hpp"
#include "hqkd/random_stream.hpp"

using namespace hqkd;

TEST(Depolarize, ZeroIsIdentity) {
  const auto rho = density_from_state(make_ghz());
  const auto out = depolarize(rho, 0.0);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(out.entries()[i], rho.entries()[i]);
}

TEST(Depolarize, OneIsMaximallyMixed) {
  const auto out = depolarize(density_from_state(make_ghz()), 1.0);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      EXPECT_NEAR(std::abs(out(i, j) - Complex(i == j ? 0.125 : 0.0)), 0.0, 1e-15);
}

TEST(Depolarize, GhzAtPointTwo) {
  const auto out = depolarize(density_from_state(make_ghz()), 0.2);
  EXPECT_NEAR(out(0, 0).real(), 0.425, 1e-12);
  EXPECT_NEAR(out(7, 7).real(), 0.425, 1e-12);
  EXPECT_NEAR(out(0, 7).real(), 0.4, 1e-12);
  EXPECT_NEAR(out(7, 0).real(), 0.4, 1e-12);
  EXPECT_NEAR(out(3, 3).real(), 0.025, 1e-12);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(Depolarize, RejectsBadProbability) {
  const auto rho = density_from_state(make_plus());
  EXPECT_THROW(depolarize(rho, -0.01), std::invalid_argument);
  EXPECT_THROW(depolarize(rho, 1.01), std::invalid_argument);
  EXPECT_THROW(depolarize(rho, std::nan("")), std::invalid_argument);
}

TEST(DepolarizeSample, ZeroDrawsNothing) {
  RandomStream a(5), b(5);
  const auto out = depolarize_sample(make_ghz(), 0.0, a);
  EXPECT_EQ(out.amplitudes()[0], make_ghz().amplitudes()[0]);
  EXPECT_EQ(a.next(), b.next());
}

TEST(DepolarizeSample, AveragesToChannel) {
  // Diagonal of the averaged state matches (1-p) rho + p I/8.
  RandomStream rng(17);
  const double p = 0.3;
  const int shots = 40000;
  std::array<double, 8> diag{};
  const auto g = make_ghz();
  for (int i = 0; i < shots; ++i) {
    const auto s = depolarize_sample(g, p, rng);
    for (std::size_t k = 0; k < 8; ++k) diag[k] += std::norm(s.amplitudes()[k]);
  }
  const auto exact = depolarize(density_from_state(g), p);
  for (std::size_t k = 0; k < 8; ++k) {
    const double mean = diag[k] / shots;
    const double e = exact(k, k).real();
    EXPECT_NEAR(mean, e, 4.0 * std::sqrt(e * (1.0 - e) / shots) + 1e-3) << k;
  }
}

TEST(Fidelity, GhzExamples) {
  EXPECT_DOUBLE_EQ(ghz_fidelity(0.0), 1.0);
  EXPECT_NEAR(ghz_fidelity(1.0), 0.35355, 5e-6);
  EXPECT_NEAR(ghz_fidelity(0.1), 0.95525, 5e-6);
}

TEST(Fidelity, B92Examples) {
  EXPECT_DOUBLE_EQ(b92_fidelity(0.0), 1.0);
  EXPECT_NEAR(b92_fidelity(1.0), 0.70711, 5e-6);
  EXPECT_NEAR(b92_fidelity(0.1), 0.97468, 5e-6);
}

TEST(Fidelity, CombinedExamples) {
  EXPECT_DOUBLE_EQ(combined_fidelity(0.0), 1.0);
  EXPECT_NEAR(combined_fidelity(0.1), 0.95525, 5e-6);
  EXPECT_NEAR(combined_fidelity(0.5), 0.75, 1e-15);
}

TEST(Fidelity, ClosedFormsMatchConstructedStates) {
  const auto g = make_ghz();
  const auto zero = StateVector(1);
  const auto plus = make_plus();
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_NEAR(ghz_fidelity(p), fidelity_pure(g, depolarize(density_from_state(g), p)), 1e-12);
    EXPECT_NEAR(b92_fidelity(p), fidelity_pure(zero, depolarize(density_from_state(zero), p)),
                1e-12);
    EXPECT_NEAR(b92_fidelity(p), fidelity_pure(plus, depolarize(density_from_state(plus), p)),
                1e-12);
  }
}

TEST(Fidelity, GhzBranchIsTheMinimumForPositiveNoise) {
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_EQ(combined_fidelity(p), ghz_fidelity(p));
    EXPECT_LT(ghz_fidelity(p), b92_fidelity(p));
  }
}

TEST(Fidelity, StrictlyDecreasing) {
  for (int i = 1; i <= 100; ++i) {
    EXPECT_LT(ghz_fidelity(i / 100.0), ghz_fidelity((i - 1) / 100.0));
    EXPECT_LT(b92_fidelity(i / 100.0), b92_fidelity((i - 1) / 100.0));
  }
}

TEST(SecurityCondition, Examples) {
  EXPECT_TRUE(security_condition(1.0, {10, 128}));
  EXPECT_FALSE(security_condition(0.95525, {4, 128}));
  EXPECT_FALSE(security_condition(0.9995, {10, 128}));
}

TEST(SecurityCondition, ExactBoundaryFails) {
  const double f = std::sqrt(1.0 - std::ldexp(1.0, -10));
  ASSERT_EQ(f * f, 1.0 - std::ldexp(1.0, -10));
  EXPECT_FALSE(security_condition(f, {10, 128}));
  EXPECT_TRUE(security_condition(std::nextafter(f, 2.0), {10, 128}));
}

TEST(SecurityCondition, MonotoneInS) {
  // Larger s tightens the threshold.
  const double f = 0.999;
  bool seen_false = false;
  for (int s = 1; s <= 40; ++s) {
    const bool ok = security_condition(f, {s, 128});
    if (seen_false) EXPECT_FALSE(ok);
    seen_false = seen_false || !ok;
  }
  EXPECT_TRUE(seen_false);
}

TEST(EntropyBound, Examples) {
  EXPECT_NEAR(entropy_bound({20, 128}), 2.646e-4, 5e-8);
  EXPECT_NEAR(entropy_bound({1, 1}), 2.2213, 5e-5);
}

TEST(EntropyBound, ShrinksWithS) {
  for (int s = 10; s < 60; ++s) EXPECT_LT(entropy_bound({s + 1, 128}), entropy_bound({s, 128}));
}

TEST(Params, Validation) {
  EXPECT_THROW((SecurityParams{0, 128}.validate()), std::invalid_argument);
  EXPECT_THROW((SecurityParams{10, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((NoiseConfig{1.5, NoiseScope::AllQubits}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((NoiseConfig{1.0, NoiseScope::QuantumChannelOnly}.validate()));
}
